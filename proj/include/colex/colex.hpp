#pragma once

#include "colex/chain_partition.hpp"
#include "colex/colex_relation.hpp"
#include "colex/graph.hpp"
#include "colex/index.hpp"
#include "colex/quotient.hpp"
#include "colex/relation.hpp"
#include "colex/serialize.hpp"
#include "colex/text_format.hpp"
