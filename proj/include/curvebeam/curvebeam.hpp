#pragma once

#include "curvebeam/airy.hpp"
#include "curvebeam/config.hpp"
#include "curvebeam/constants.hpp"
#include "curvebeam/errors.hpp"
#include "curvebeam/field.hpp"
#include "curvebeam/geometry.hpp"
#include "curvebeam/metrics.hpp"
#include "curvebeam/plate.hpp"
#include "curvebeam/polycurve.hpp"
#include "curvebeam/prediction.hpp"
#include "curvebeam/presets.hpp"
#include "curvebeam/reflection.hpp"
#include "curvebeam/reflector.hpp"
#include "curvebeam/report.hpp"
#include "curvebeam/svg.hpp"
#include "curvebeam/tangent_family.hpp"
#include "curvebeam/trajectory.hpp"
#include "curvebeam/version.hpp"
