#pragma once

#include "steklov/geometry.hpp"
#include "steklov/kernels.hpp"
#include "steklov/disk_oracle.hpp"
#include "steklov/layer.hpp"
#include "steklov/operators.hpp"
#include "steklov/field.hpp"
#include "steklov/nodal.hpp"
#include "steklov/verify.hpp"
#include "steklov/io.hpp"
