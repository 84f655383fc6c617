// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "chebresize/bench.hpp"
#include "chebresize/bicubic.hpp"
#include "chebresize/error.hpp"
#include "chebresize/image.hpp"
#include "chebresize/image_io.hpp"
#include "chebresize/metrics.hpp"
#include "chebresize/nodes.hpp"
#include "chebresize/operator.hpp"
#include "chebresize/parallel.hpp"
#include "chebresize/resize.hpp"
