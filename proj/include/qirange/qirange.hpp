#pragma once

#include "qirange/atmosphere.hpp"
#include "qirange/detection_mc.hpp"
#include "qirange/error.hpp"
#include "qirange/fock_oracle.hpp"
#include "qirange/link_budget.hpp"
#include "qirange/quantum_states.hpp"
#include "qirange/radiometry.hpp"
#include "qirange/range_solver.hpp"
#include "qirange/scenario_config.hpp"
#include "qirange/sweep_csv.hpp"
#include "qirange/types.hpp"
