#pragma once

#include "syncap/channels.hpp"
#include "syncap/entropy.hpp"
#include "syncap/litdata.hpp"
#include "syncap/oracle.hpp"
#include "syncap/penalties.hpp"
#include "syncap/quantize.hpp"
