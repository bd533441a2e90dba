#pragma once

// Umbrella header.

#include "qrips/bottleneck.hpp"
#include "qrips/complex.hpp"
#include "qrips/covers.hpp"
#include "qrips/linkage.hpp"
#include "qrips/metric.hpp"
#include "qrips/partition.hpp"
#include "qrips/persistence.hpp"
#include "qrips/synthetic.hpp"
#include "qrips/tower.hpp"
#include "qrips/union_find.hpp"
