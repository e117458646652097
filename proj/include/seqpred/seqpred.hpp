// Umbrella header.
#pragma once

#include "seqpred/automata.hpp"
#include "seqpred/core.hpp"
#include "seqpred/corpus.hpp"
#include "seqpred/counting.hpp"
#include "seqpred/generators.hpp"
#include "seqpred/hdp.hpp"
#include "seqpred/io.hpp"
#include "seqpred/lz77.hpp"
#include "seqpred/lzp.hpp"
#include "seqpred/slp.hpp"
#include "seqpred/suffix_index.hpp"
#include "seqpred/verify.hpp"
