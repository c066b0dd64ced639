#pragma once

#include "contest/bernstein.hpp"
#include "contest/equilibrium.hpp"
#include "contest/errors.hpp"
#include "contest/objective.hpp"
#include "contest/optimizer.hpp"
#include "contest/parallel.hpp"
#include "contest/policy.hpp"
#include "contest/quadrature.hpp"
#include "contest/structure.hpp"
