#pragma once

#include "stel/dense_set.hpp"
#include "stel/elneg.hpp"
#include "stel/generator.hpp"
#include "stel/model_io.hpp"
#include "stel/normalform.hpp"
#include "stel/parser.hpp"
#include "stel/printer.hpp"
#include "stel/rational.hpp"
#include "stel/reduction.hpp"
#include "stel/selsearch.hpp"
#include "stel/semantics.hpp"
#include "stel/syntax.hpp"
