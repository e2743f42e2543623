#ifndef FLAGSHIFT_FLAGSHIFT_HPP
#define FLAGSHIFT_FLAGSHIFT_HPP

#include "flagshift/certify.hpp"
#include "flagshift/dynamics.hpp"
#include "flagshift/errors.hpp"
#include "flagshift/families.hpp"
#include "flagshift/lie_algebra.hpp"
#include "flagshift/linalg.hpp"
#include "flagshift/poisson.hpp"
#include "flagshift/product_space.hpp"

#endif
