#ifndef NCHARVEST_HPP
#define NCHARVEST_HPP

#include "ncharvest/types.hpp"
#include "ncharvest/text.hpp"
#include "ncharvest/lexicon.hpp"
#include "ncharvest/wordlists.hpp"
#include "ncharvest/corpus_index.hpp"
#include "ncharvest/ngram_table.hpp"
#include "ncharvest/query_gen.hpp"
#include "ncharvest/nc_extract.hpp"
#include "ncharvest/pattern_extract.hpp"
#include "ncharvest/seeds.hpp"
#include "ncharvest/bootstrap.hpp"
#include "ncharvest/state_io.hpp"
#include "ncharvest/analysis.hpp"
#include "ncharvest/pipeline.hpp"

#endif
