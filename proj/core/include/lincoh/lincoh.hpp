// SPDX-License-Identifier: Apache-2.0

#ifndef LINCOH_LINCOH_HPP
#define LINCOH_LINCOH_HPP

#include "lincoh/closed_forms.hpp"
#include "lincoh/errors.hpp"
#include "lincoh/instances.hpp"
#include "lincoh/model.hpp"
#include "lincoh/oracle.hpp"
#include "lincoh/solver.hpp"
#include "lincoh/topology.hpp"
#include "lincoh/version.hpp"

#endif  // LINCOH_LINCOH_HPP
