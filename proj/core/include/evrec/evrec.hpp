#pragma once

#include "evrec/corpus.hpp"
#include "evrec/embedding.hpp"
#include "evrec/errors.hpp"
#include "evrec/eval.hpp"
#include "evrec/expansion.hpp"
#include "evrec/index.hpp"
#include "evrec/ranking.hpp"
