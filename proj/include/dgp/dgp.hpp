#ifndef DGP_DGP_HPP
#define DGP_DGP_HPP

#include "count.hpp"
#include "errors.hpp"
#include "estimates.hpp"
#include "harness.hpp"
#include "identities.hpp"
#include "partitions.hpp"
#include "primes.hpp"

#endif  // DGP_DGP_HPP
