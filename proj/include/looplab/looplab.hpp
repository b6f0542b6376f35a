#pragma once

#include "looplab/algebra.hpp"
#include "looplab/binomial.hpp"
#include "looplab/closedform.hpp"
#include "looplab/errors.hpp"
#include "looplab/ez.hpp"
#include "looplab/gf2.hpp"
#include "looplab/homology.hpp"
#include "looplab/random.hpp"
#include "looplab/report.hpp"
#include "looplab/simplicial.hpp"
#include "looplab/space.hpp"
#include "looplab/steenrod.hpp"
#include "looplab/thom.hpp"
#include "looplab/verify.hpp"
