#pragma once

#include "ccf/adaptation.hpp"
#include "ccf/ccb.hpp"
#include "ccf/climate_data.hpp"
#include "ccf/config.hpp"
#include "ccf/contracts.hpp"
#include "ccf/direct_search.hpp"
#include "ccf/errors.hpp"
#include "ccf/io.hpp"
#include "ccf/price_opt.hpp"
#include "ccf/random.hpp"
#include "ccf/scenario.hpp"
#include "ccf/simulation.hpp"
#include "ccf/stats.hpp"
