#pragma once

#include "quivermod/errors.hpp"
#include "quivermod/field.hpp"
#include "quivermod/generic.hpp"
#include "quivermod/io.hpp"
#include "quivermod/localization.hpp"
#include "quivermod/matrix.hpp"
#include "quivermod/quiver.hpp"
#include "quivermod/representation.hpp"
#include "quivermod/stability.hpp"
