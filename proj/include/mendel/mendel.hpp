#pragma once

#include "mendel/constructions.hpp"
#include "mendel/design.hpp"
#include "mendel/design_json.hpp"
#include "mendel/error.hpp"
#include "mendel/finite_field.hpp"
#include "mendel/group.hpp"
#include "mendel/numtheory.hpp"
#include "mendel/orthomorphism.hpp"
