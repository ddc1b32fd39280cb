#pragma once

#include "voamodes/correspondence.hpp"
#include "voamodes/errors.hpp"
#include "voamodes/fock_vector.hpp"
#include "voamodes/free_field.hpp"
#include "voamodes/heisenberg.hpp"
#include "voamodes/intertwiner.hpp"
#include "voamodes/matrix.hpp"
#include "voamodes/module.hpp"
#include "voamodes/partition.hpp"
#include "voamodes/rational.hpp"
#include "voamodes/series.hpp"
#include "voamodes/tally.hpp"
