#pragma once

#include "gcurv/catalog.hpp"
#include "gcurv/curvature.hpp"
#include "gcurv/errors.hpp"
#include "gcurv/frame.hpp"
#include "gcurv/immersion.hpp"
#include "gcurv/integrate.hpp"
#include "gcurv/quadrature.hpp"
#include "gcurv/report.hpp"
#include "gcurv/sampling.hpp"
#include "gcurv/sphere.hpp"
#include "gcurv/taylor.hpp"
#include "gcurv/term_immersion.hpp"
#include "gcurv/tube.hpp"
