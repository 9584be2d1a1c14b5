#pragma once

#include "hardy/cp.hpp"
#include "hardy/families.hpp"
#include "hardy/minimize.hpp"
#include "hardy/rng.hpp"
#include "hardy/seq.hpp"
#include "hardy/series.hpp"
#include "hardy/stability.hpp"
#include "hardy/sum.hpp"
#include "hardy/supersolution.hpp"
#include "hardy/types.hpp"
#include "hardy/weight_pair.hpp"
