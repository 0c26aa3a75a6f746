#pragma once

#include "fitch/census.hpp"
#include "fitch/cotree.hpp"
#include "fitch/digraph.hpp"
#include "fitch/editing.hpp"
#include "fitch/error.hpp"
#include "fitch/generator.hpp"
#include "fitch/io.hpp"
#include "fitch/oracle.hpp"
#include "fitch/tree.hpp"
#include "fitch/triples.hpp"
