// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ritz/engine.hpp"
#include "ritz/jacobi.hpp"
#include "ritz/matrix.hpp"
#include "ritz/matrix_model.hpp"
#include "ritz/models.hpp"
#include "ritz/oracle.hpp"
#include "ritz/report.hpp"
