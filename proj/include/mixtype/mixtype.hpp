#pragma once

#include "mixtype/construction.hpp"
#include "mixtype/curvature.hpp"
#include "mixtype/errors.hpp"
#include "mixtype/expression.hpp"
#include "mixtype/fourier.hpp"
#include "mixtype/gallery.hpp"
#include "mixtype/numerics.hpp"
#include "mixtype/parallel.hpp"
#include "mixtype/spaceform.hpp"
#include "mixtype/surface.hpp"
#include "mixtype/taylor.hpp"
#include "mixtype/typechange.hpp"
#include "mixtype/verify.hpp"
