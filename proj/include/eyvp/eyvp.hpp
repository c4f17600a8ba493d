#pragma once

#include "eyvp/errors.hpp"
#include "eyvp/eval.hpp"
#include "eyvp/fsa.hpp"
#include "eyvp/grammar.hpp"
#include "eyvp/lexicon.hpp"
#include "eyvp/parse.hpp"
#include "eyvp/pos.hpp"
#include "eyvp/text.hpp"
#include "eyvp/transfer.hpp"
#include "eyvp/unicode.hpp"
