#pragma once

#include "mingeo/error.hpp"
#include "mingeo/linalg.hpp"
#include "mingeo/random.hpp"
#include "mingeo/spaces.hpp"
#include "mingeo/curves.hpp"
#include "mingeo/minimal.hpp"
#include "mingeo/io.hpp"
#include "mingeo/verify.hpp"
#include "mingeo/report.hpp"
