#pragma once

#include "pegls/unitroot/adf.hpp"
#include "pegls/unitroot/mackinnon.hpp"
#include "pegls/unitroot/moment_tables.hpp"
#include "pegls/unitroot/panel_tests.hpp"
