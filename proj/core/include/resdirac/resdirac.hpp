#pragma once

#include "resdirac/canonical.hpp"
#include "resdirac/forward.hpp"
#include "resdirac/inverse.hpp"
#include "resdirac/io.hpp"
#include "resdirac/numerics.hpp"
#include "resdirac/potentials.hpp"
#include "resdirac/spectral.hpp"
#include "resdirac/transforms.hpp"
#include "resdirac/types.hpp"
#include "resdirac/validate.hpp"
