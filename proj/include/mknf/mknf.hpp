#ifndef MKNF_MKNF_HPP
#define MKNF_MKNF_HPP

#include "mknf/aft.hpp"
#include "mknf/entailment.hpp"
#include "mknf/headcut.hpp"
#include "mknf/oracles.hpp"
#include "mknf/parse.hpp"
#include "mknf/partition.hpp"
#include "mknf/qfix.hpp"
#include "mknf/syntax.hpp"
#include "mknf/truth.hpp"

#endif
