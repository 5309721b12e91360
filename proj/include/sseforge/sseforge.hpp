#pragma once

// Umbrella header.

#include "rings.hpp"
#include "poly.hpp"
#include "matrix.hpp"
#include "smith.hpp"
#include "stable.hpp"
#include "cert.hpp"
#include "sse.hpp"
#include "boxops.hpp"
#include "elword.hpp"
#include "se_bridge.hpp"
#include "json_io.hpp"
#include "gen.hpp"
#include "selftest.hpp"
