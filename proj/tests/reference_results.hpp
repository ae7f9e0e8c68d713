#pragma once

// Published precision / recall / F1 triples (percent), transcribed from the
// reported result tables.

#include <array>

namespace ate::testing {

struct PublishedTriple {
  const char* setting;
  const char* model;
  double precision;
  double recall;
  double f1;
};

inline constexpr std::array<PublishedTriple, 48> kActerTriples = {{
    {"en/ANN", "albert-base-v1", 52.58, 47.40, 49.86},
    {"en/NES", "albert-base-v1", 54.42, 54.63, 54.52},
    {"en/ANN", "albert-base-v2", 49.85, 48.50, 49.17},
    {"en/NES", "albert-base-v2", 57.01, 55.13, 56.05},
    {"en/ANN", "bert-base-uncased", 59.06, 32.44, 41.88},
    {"en/NES", "bert-base-uncased", 61.42, 47.50, 53.57},
    {"en/ANN", "distilbert-base-uncased", 58.24, 38.75, 46.54},
    {"en/NES", "distilbert-base-uncased", 61.06, 48.24, 53.90},
    {"en/ANN", "electra-small-generator", 56.46, 46.80, 51.18},
    {"en/NES", "electra-small-generator", 58.17, 47.31, 52.18},
    {"en/ANN", "roberta-base", 58.10, 51.04, 54.34},
    {"en/NES", "roberta-base", 62.28, 56.30, 59.14},
    {"en/ANN", "xlnet-base-cased", 56.50, 53.92, 55.18},
    {"en/NES", "xlnet-base-cased", 58.34, 57.30, 57.82},
    {"en/ANN", "bert-base-multilingual-uncased", 55.21, 35.24, 43.02},
    {"en/NES", "bert-base-multilingual-uncased", 62.06, 49.44, 55.04},
    {"en/ANN", "distilbert-base-multilingual-cased", 55.14, 45.45, 49.83},
    {"en/NES", "distilbert-base-multilingual-cased", 57.10, 54.20, 55.61},
    {"en/ANN", "infoxlm-base", 57.67, 54.64, 56.11},
    {"en/NES", "infoxlm-base", 61.18, 54.48, 57.64},
    {"en/ANN", "xlm-roberta-base (baseline)", 57.34, 51.46, 54.24},
    {"en/NES", "xlm-roberta-base (baseline)", 58.80, 55.52, 57.11},
    {"fr/ANN", "camembert-base", 70.51, 44.97, 54.92},
    {"fr/NES", "camembert-base", 70.74, 52.23, 60.09},
    {"fr/ANN", "flauberta", 75.91, 26.17, 38.92},
    {"fr/NES", "flauberta", 75.28, 39.01, 51.39},
    {"fr/ANN", "bert-base-multilingual-uncased", 67.77, 37.66, 48.42},
    {"fr/NES", "bert-base-multilingual-uncased", 69.39, 48.99, 57.43},
    {"fr/ANN", "distilbert-base-multilingual-cased", 64.45, 43.45, 51.91},
    {"fr/NES", "distilbert-base-multilingual-cased", 65.20, 48.78, 55.81},
    {"fr/ANN", "infoxlm-base", 68.74, 39.77, 50.39},
    {"fr/NES", "infoxlm-base", 71.10, 48.90, 57.95},
    {"fr/ANN", "xlm-roberta-base (baseline)", 68.85, 48.61, 56.99},
    {"fr/NES", "xlm-roberta-base (baseline)", 70.71, 46.46, 56.08},
    {"nl/ANN", "bert-base-dutch-cased", 65.59, 65.53, 65.56},
    {"nl/NES", "bert-base-dutch-cased", 67.61, 66.02, 66.81},
    {"nl/ANN", "robBERT-base", 69.58, 36.84, 48.17},
    {"nl/NES", "robBERT-base", 71.63, 55.01, 62.23},
    {"nl/ANN", "robbert-v2-dutch-base", 71.56, 36.40, 48.25},
    {"nl/NES", "robbert-v2-dutch-base", 73.58, 55.72, 63.42},
    {"nl/ANN", "bert-base-multilingual-uncased", 70.67, 62.49, 66.33},
    {"nl/NES", "bert-base-multilingual-uncased", 72.34, 63.71, 67.75},
    {"nl/ANN", "distilbert-base-multilingual-cased", 69.80, 61.28, 65.26},
    {"nl/NES", "distilbert-base-multilingual-cased", 69.45, 66.15, 67.76},
    {"nl/ANN", "infoxlm-base", 70.43, 66.73, 68.53},
    {"nl/NES", "infoxlm-base", 73.47, 64.24, 68.55},
    {"nl/ANN", "xlm-roberta-base (baseline)", 68.53, 67.94, 68.23},
    {"nl/NES", "xlm-roberta-base (baseline)", 73.93, 60.65, 66.63},
}};

// Rotating splits; setting is "<train> + <train> | <val> | <test>".
inline constexpr std::array<PublishedTriple, 60> kRotationTriples = {{
    {"bim + kem | vet | ling", "xlm-roberta-base", 69.55, 64.05, 66.69},
    {"bim + kem | vet | ling", "sloberta", 73.23, 70.51, 71.84},
    {"bim + kem | vet | ling", "infoxlm-base", 68.37, 71.38, 69.84},
    {"bim + vet | kem | ling", "xlm-roberta-base", 66.20, 72.38, 69.15},
    {"bim + vet | kem | ling", "sloberta", 73.91, 73.53, 73.72},
    {"bim + vet | kem | ling", "infoxlm-base", 67.74, 71.46, 69.55},
    {"kem + vet | bim | ling", "xlm-roberta-base", 69.48, 73.66, 71.51},
    {"kem + vet | bim | ling", "sloberta", 74.45, 73.96, 74.20},
    {"kem + vet | bim | ling", "infoxlm-base", 73.71, 66.90, 70.14},
    {"bim + kem | ling | vet", "xlm-roberta-base", 71.06, 66.72, 68.82},
    {"bim + kem | ling | vet", "sloberta", 77.56, 65.96, 71.29},
    {"bim + kem | ling | vet", "infoxlm-base", 71.04, 63.69, 67.16},
    {"bim + ling | kem | vet", "xlm-roberta-base", 72.66, 65.59, 68.94},
    {"bim + ling | kem | vet", "sloberta", 78.33, 65.31, 71.23},
    {"bim + ling | kem | vet", "infoxlm-base", 66.88, 68.93, 67.89},
    {"ling + kem | bim | vet", "xlm-roberta-base", 69.30, 68.07, 68.68},
    {"ling + kem | bim | vet", "sloberta", 76.66, 64.89, 70.29},
    {"ling + kem | bim | vet", "infoxlm-base", 72.69, 63.63, 67.86},
    {"bim + vet | ling | kem", "xlm-roberta-base", 68.67, 55.13, 61.16},
    {"bim + vet | ling | kem", "sloberta", 72.14, 65.88, 68.87},
    {"bim + vet | ling | kem", "infoxlm-base", 67.77, 60.40, 63.87},
    {"bim + ling | vet | kem", "xlm-roberta-base", 70.23, 59.24, 64.27},
    {"bim + ling | vet | kem", "sloberta", 70.29, 68.45, 69.36},
    {"bim + ling | vet | kem", "infoxlm-base", 72.00, 56.58, 63.37},
    {"ling + vet | bim | kem", "xlm-roberta-base", 70.14, 60.27, 64.83},
    {"ling + vet | bim | kem", "sloberta", 73.52, 66.96, 70.09},
    {"ling + vet | bim | kem", "infoxlm-base", 71.22, 59.49, 64.83},
    {"vet + kem | ling | bim", "xlm-roberta-base", 62.25, 65.20, 63.69},
    {"vet + kem | ling | bim", "sloberta", 67.97, 67.36, 67.66},
    {"vet + kem | ling | bim", "infoxlm-base", 63.60, 60.59, 62.06},
    {"vet + ling | kem | bim", "xlm-roberta-base", 62.35, 63.99, 63.16},
    {"vet + ling | kem | bim", "sloberta", 68.97, 66.62, 67.77},
    {"vet + ling | kem | bim", "infoxlm-base", 56.66, 67.53, 61.62},
    {"ling + kem | vet | bim", "xlm-roberta-base", 63.51, 66.80, 65.11},
    {"ling + kem | vet | bim", "sloberta", 67.15, 67.79, 67.47},
    {"ling + kem | vet | bim", "infoxlm-base", 60.61, 64.04, 62.28},
    {"bim + kem | vet | ling", "bert-base-multilingual-uncased", 66.77, 65.86, 66.31},
    {"bim + kem | vet | ling", "distilbert-base-multilingual-cased", 61.82, 53.38, 57.29},
    {"bim + vet | kem | ling", "bert-base-multilingual-uncased", 66.80, 68.01, 67.40},
    {"bim + vet | kem | ling", "distilbert-base-multilingual-cased", 59.14, 67.20, 62.91},
    {"kem + vet | bim | ling", "bert-base-multilingual-uncased", 65.97, 69.62, 67.75},
    {"kem + vet | bim | ling", "distilbert-base-multilingual-cased", 60.94, 58.16, 59.52},
    {"bim + kem | ling | vet", "bert-base-multilingual-uncased", 68.18, 61.56, 64.70},
    {"bim + kem | ling | vet", "distilbert-base-multilingual-cased", 63.76, 58.70, 61.13},
    {"bim + ling | kem | vet", "bert-base-multilingual-uncased", 68.58, 65.46, 66.98},
    {"bim + ling | kem | vet", "distilbert-base-multilingual-cased", 65.83, 58.15, 61.75},
    {"ling + kem | bim | vet", "bert-base-multilingual-uncased", 69.12, 60.61, 64.59},
    {"ling + kem | bim | vet", "distilbert-base-multilingual-cased", 66.01, 54.02, 59.42},
    {"bim + vet | ling | kem", "bert-base-multilingual-uncased", 65.35, 59.73, 62.41},
    {"bim + vet | ling | kem", "distilbert-base-multilingual-cased", 55.73, 60.52, 58.03},
    {"bim + ling | vet | kem", "bert-base-multilingual-uncased", 65.53, 63.22, 64.35},
    {"bim + ling | vet | kem", "distilbert-base-multilingual-cased", 60.15, 55.83, 57.91},
    {"ling + vet | bim | kem", "bert-base-multilingual-uncased", 67.32, 53.96, 59.90},
    {"ling + vet | bim | kem", "distilbert-base-multilingual-cased", 59.53, 57.70, 58.60},
    {"vet + kem | ling | bim", "bert-base-multilingual-uncased", 62.63, 60.85, 61.73},
    {"vet + kem | ling | bim", "distilbert-base-multilingual-cased", 57.84, 55.84, 56.82},
    {"vet + ling | kem | bim", "bert-base-multilingual-uncased", 65.25, 58.30, 61.58},
    {"vet + ling | kem | bim", "distilbert-base-multilingual-cased", 60.62, 56.36, 58.41},
    {"ling + kem | vet | bim", "bert-base-multilingual-uncased", 62.69, 63.61, 63.15},
    {"ling + kem | vet | bim", "distilbert-base-multilingual-cased", 62.04, 52.44, 56.84},
}};

}  // namespace ate::testing
