#pragma once

#include "rbswipt/config.hpp"
#include "rbswipt/constants.hpp"
#include "rbswipt/emit.hpp"
#include "rbswipt/error.hpp"
#include "rbswipt/it_channel.hpp"
#include "rbswipt/link.hpp"
#include "rbswipt/numeric.hpp"
#include "rbswipt/optics.hpp"
#include "rbswipt/params.hpp"
#include "rbswipt/pv.hpp"
#include "rbswipt/resonator.hpp"
#include "rbswipt/safety.hpp"
#include "rbswipt/sweep.hpp"
