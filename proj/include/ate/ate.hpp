#pragma once

#include "ate/config.hpp"
#include "ate/corpus.hpp"
#include "ate/decode.hpp"
#include "ate/ensemble.hpp"
#include "ate/error.hpp"
#include "ate/evaluate.hpp"
#include "ate/labeling.hpp"
#include "ate/ledger.hpp"
#include "ate/report.hpp"
#include "ate/run_record.hpp"
#include "ate/runner.hpp"
#include "ate/tagger.hpp"
#include "ate/token.hpp"
