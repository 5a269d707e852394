#ifndef QTEDIT_QTEDIT_HPP
#define QTEDIT_QTEDIT_HPP

#include "qtedit/analysis.hpp"
#include "qtedit/bounds.hpp"
#include "qtedit/branching.hpp"
#include "qtedit/bucket_queue.hpp"
#include "qtedit/counters.hpp"
#include "qtedit/graph.hpp"
#include "qtedit/io.hpp"
#include "qtedit/parallel.hpp"
#include "qtedit/search.hpp"
#include "qtedit/subgraph.hpp"

#endif  // QTEDIT_QTEDIT_HPP
