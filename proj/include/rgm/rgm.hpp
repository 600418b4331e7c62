#pragma once

#include "rgm/errors.hpp"
#include "rgm/graph.hpp"
#include "rgm/random.hpp"
#include "rgm/sem.hpp"
#include "rgm/inference.hpp"
#include "rgm/selection.hpp"
#include "rgm/evaluation.hpp"
#include "rgm/io.hpp"
#include "rgm/diagnostics.hpp"
