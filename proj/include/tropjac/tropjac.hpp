#pragma once

#include "tropjac/corpus.hpp"
#include "tropjac/geometry.hpp"
#include "tropjac/io.hpp"
#include "tropjac/jacobian.hpp"
#include "tropjac/polystab.hpp"
#include "tropjac/poset.hpp"
#include "tropjac/trop_curve.hpp"
#include "tropjac/universal.hpp"
