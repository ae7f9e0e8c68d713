#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ate/decode.hpp"
#include "ate/detail/utf8.hpp"
#include "ate/error.hpp"
#include "ate/hash.hpp"

namespace ate {

enum class Variant { ANN, NES };

inline std::string to_string(Variant v) { return v == Variant::ANN ? "ANN" : "NES"; }

inline Variant variant_from_string(std::string_view s) {
  if (s == "ANN" || s == "ann") return Variant::ANN;
  if (s == "NES" || s == "nes") return Variant::NES;
  throw Error(ErrorKind::InvalidConfig, "unknown annotation variant '" + std::string(s) + "'");
}

struct Document {
  std::string id;
  std::string language;
  std::string domain;
  std::string text;
};

/// Gold terms of one (language, domain, variant). For multi-domain groups
/// (a training split) `domain` joins the member domains with '+'.
struct GoldStandard {
  std::string language;
  std::string domain;
  Variant variant = Variant::ANN;
  TermSet terms;
};

/// An empty `val_domain` selects the ACTER protocol: validation documents are
/// held out from the training domains instead of coming from a fourth domain.
struct SplitSpec {
  std::string language;
  std::vector<std::string> train_domains;
  std::string val_domain;
  std::string test_domain;
  Variant variant = Variant::ANN;

  friend bool operator==(const SplitSpec&, const SplitSpec&) = default;
};

inline std::string split_key(const std::string& language, const std::string& test_domain, Variant variant) {
  return language + "/" + test_domain + "/" + to_string(variant);
}

inline std::string split_key(const SplitSpec& spec) {
  return split_key(spec.language, spec.test_domain, spec.variant);
}

inline std::string describe(const SplitSpec& spec) {
  std::string out;
  for (std::size_t i = 0; i < spec.train_domains.size(); ++i) {
    if (i) out += " + ";
    out += spec.train_domains[i];
  }
  out += " | " + (spec.val_domain.empty() ? std::string("holdout") : spec.val_domain);
  out += " | " + spec.test_domain;
  return out;
}

class Corpus {
 public:
  std::vector<Document> documents;  // sorted by (language, domain, id)
  std::vector<GoldStandard> golds;  // sorted by (language, domain, variant)
  std::string checksum;
  std::size_t skipped_empty_documents = 0;

  std::set<std::string> languages() const {
    std::set<std::string> out;
    for (const auto& d : documents) out.insert(d.language);
    return out;
  }

  std::set<std::string> domains(const std::string& language) const {
    std::set<std::string> out;
    for (const auto& d : documents) {
      if (d.language == language) out.insert(d.domain);
    }
    return out;
  }

  const GoldStandard* find_gold(const std::string& language, const std::string& domain,
                                Variant variant) const {
    for (const auto& g : golds) {
      if (g.language == language && g.domain == domain && g.variant == variant) return &g;
    }
    return nullptr;
  }

  std::vector<Document> documents_of(const std::string& language, const std::string& domain) const {
    std::vector<Document> out;
    for (const auto& d : documents) {
      if (d.language == language && d.domain == domain) out.push_back(d);
    }
    return out;
  }

  std::string summary() const {
    std::ostringstream out;
    out << documents.size() << " documents";
    if (skipped_empty_documents) out << " (" << skipped_empty_documents << " empty skipped)";
    out << '\n';
    for (const auto& g : golds) {
      std::size_t docs = 0;
      for (const auto& d : documents) docs += (d.language == g.language && d.domain == g.domain);
      out << "  " << g.language << '/' << g.domain << ' ' << to_string(g.variant) << ": " << docs
          << " docs, " << g.terms.size() << " gold terms\n";
    }
    return out.str();
  }
};

enum class Layout { canonical };

struct LoadOptions {
  /// Variants whose gold file must exist for every domain.
  std::set<Variant> required_variants{Variant::ANN};
};

namespace detail {

inline std::vector<std::filesystem::path> sorted_entries(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

inline bool has_visible_name(const std::filesystem::path& p) {
  auto name = p.filename().string();
  return !name.empty() && name[0] != '.';
}

}  // namespace detail

/// Loads `<root>/<language>/<domain>/texts/<docid>.txt` plus
/// `<root>/<language>/<domain>/annotations/{ann,nes}.tsv`.
inline Corpus load_corpus(const std::filesystem::path& root, Layout layout = Layout::canonical,
                          const LoadOptions& options = {}) {
  namespace fs = std::filesystem;
  (void)layout;
  if (!fs::is_directory(root)) {
    throw Error(ErrorKind::Io, "corpus root " + root.string() + " is not a directory");
  }

  Corpus corpus;
  Sha256 checksum;
  std::map<std::string, std::string> seen_ids;  // id -> "<language>/<domain>"

  for (const auto& lang_dir : detail::sorted_entries(root)) {
    if (!fs::is_directory(lang_dir) || !detail::has_visible_name(lang_dir)) continue;
    const std::string language = lang_dir.filename().string();

    for (const auto& domain_dir : detail::sorted_entries(lang_dir)) {
      if (!fs::is_directory(domain_dir) || !detail::has_visible_name(domain_dir)) continue;
      const std::string domain = domain_dir.filename().string();
      const fs::path texts = domain_dir / "texts";
      if (!fs::is_directory(texts)) continue;

      std::size_t loaded = 0;
      for (const auto& file : detail::sorted_entries(texts)) {
        if (file.extension() != ".txt" || !fs::is_regular_file(file)) continue;
        std::string text = read_file(file);
        if (!detail::is_valid_utf8(text)) {
          throw Error(ErrorKind::EncodingError, file.string() + " is not valid UTF-8");
        }
        const std::string id = file.stem().string();
        const std::string where = language + "/" + domain;
        if (auto [it, inserted] = seen_ids.emplace(id, where); !inserted) {
          throw Error(ErrorKind::DuplicateDocumentId,
                      "document id '" + id + "' appears in " + it->second + " and " + where);
        }
        checksum.update_field(fs::relative(file, root).generic_string()).update_field(text);
        bool blank = std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); });
        if (blank) {
          ++corpus.skipped_empty_documents;
          continue;
        }
        corpus.documents.push_back({id, language, domain, std::move(text)});
        ++loaded;
      }
      if (loaded == 0) continue;

      const fs::path annotations = domain_dir / "annotations";
      if (!fs::is_directory(annotations)) {
        throw Error(ErrorKind::MissingAnnotation,
                    language + "/" + domain + " has texts but no annotations/ directory");
      }
      for (Variant variant : {Variant::ANN, Variant::NES}) {
        const fs::path gold_file = annotations / (variant == Variant::ANN ? "ann.tsv" : "nes.tsv");
        const bool required = options.required_variants.count(variant) != 0;
        if (!fs::is_regular_file(gold_file)) {
          if (required) {
            throw Error(ErrorKind::MissingAnnotation,
                        language + "/" + domain + " has no " + gold_file.filename().string());
          }
          continue;
        }
        const std::string content = read_file(gold_file);
        checksum.update_field(fs::relative(gold_file, root).generic_string()).update_field(content);
        GoldStandard gold{language, domain, variant, parse_term_list(content, gold_file.string())};
        if (gold.terms.empty()) {
          throw Error(ErrorKind::MissingAnnotation, gold_file.string() + " contains no terms");
        }
        gold.terms.provenance = "gold";
        gold.terms.split_key = split_key(language, domain, variant);
        corpus.golds.push_back(std::move(gold));
      }
    }
  }

  corpus.checksum = checksum.hex();
  return corpus;
}

struct Split {
  std::vector<Document> train_docs;
  std::vector<Document> val_docs;
  std::vector<Document> test_docs;
  GoldStandard test_gold;
  GoldStandard train_gold;
  GoldStandard val_gold;
};

/// Checks the SplitSpec invariants against a corpus.
inline void validate_split(const Corpus& corpus, const SplitSpec& spec) {
  const auto available = corpus.domains(spec.language);
  if (available.empty()) {
    throw Error(ErrorKind::UnknownDomain, "corpus has no documents for language '" + spec.language + "'");
  }
  if (spec.train_domains.empty()) throw Error(ErrorKind::InvalidConfig, "split has no training domains");
  if (spec.test_domain.empty()) throw Error(ErrorKind::InvalidConfig, "split has no test domain");

  std::vector<std::string> named = spec.train_domains;
  if (!spec.val_domain.empty()) named.push_back(spec.val_domain);
  named.push_back(spec.test_domain);
  for (const auto& d : named) {
    if (!available.count(d)) {
      throw Error(ErrorKind::UnknownDomain, "domain '" + d + "' not in corpus for " + spec.language);
    }
  }
  std::set<std::string> distinct(named.begin(), named.end());
  if (distinct.size() != named.size()) {
    throw Error(ErrorKind::OverlappingSplit, "split domains are not pairwise disjoint: " + describe(spec));
  }
}

namespace detail {

inline GoldStandard union_gold(const Corpus& corpus, const std::string& language,
                               const std::vector<std::string>& domains, Variant variant) {
  GoldStandard out;
  out.language = language;
  out.variant = variant;
  for (std::size_t i = 0; i < domains.size(); ++i) {
    if (i) out.domain += '+';
    out.domain += domains[i];
    const GoldStandard* g = corpus.find_gold(language, domains[i], variant);
    if (!g) {
      throw Error(ErrorKind::MissingAnnotation,
                  "no " + to_string(variant) + " gold for " + language + "/" + domains[i]);
    }
    out.terms.entries.insert(g->terms.entries.begin(), g->terms.entries.end());
  }
  out.terms.provenance = "gold";
  return out;
}

}  // namespace detail

/// Size of the validation slice held out from training documents when the
/// split names no validation domain.
inline std::size_t holdout_size(std::size_t train_documents) {
  if (train_documents < 2) return 0;
  return std::max<std::size_t>(1, train_documents / 10);
}

inline Split make_split(const Corpus& corpus, const SplitSpec& spec) {
  validate_split(corpus, spec);

  Split split;
  for (const auto& doc : corpus.documents) {
    if (doc.language != spec.language) continue;
    if (doc.domain == spec.test_domain) {
      split.test_docs.push_back(doc);
    } else if (doc.domain == spec.val_domain) {
      split.val_docs.push_back(doc);
    } else if (std::find(spec.train_domains.begin(), spec.train_domains.end(), doc.domain) !=
               spec.train_domains.end()) {
      split.train_docs.push_back(doc);
    }
  }

  split.train_gold = detail::union_gold(corpus, spec.language, spec.train_domains, spec.variant);
  split.test_gold = detail::union_gold(corpus, spec.language, {spec.test_domain}, spec.variant);
  split.test_gold.terms.split_key = split_key(spec);

  if (spec.val_domain.empty()) {
    std::sort(split.train_docs.begin(), split.train_docs.end(),
              [](const Document& a, const Document& b) { return a.id < b.id; });
    const std::size_t n = holdout_size(split.train_docs.size());
    split.val_docs.assign(split.train_docs.end() - static_cast<std::ptrdiff_t>(n), split.train_docs.end());
    split.train_docs.resize(split.train_docs.size() - n);
    split.val_gold = split.train_gold;
  } else {
    split.val_gold = detail::union_gold(corpus, spec.language, {spec.val_domain}, spec.variant);
  }
  return split;
}

/// Row layout of the four-domain rotation table: for each test domain, the
/// three (train pair, validation) choices in the order they are reported.
inline const std::vector<SplitSpec>& rsdo5_layout() {
  static const std::vector<SplitSpec> layout = {
      {"sl", {"bim", "kem"}, "vet", "ling", Variant::ANN},
      {"sl", {"bim", "vet"}, "kem", "ling", Variant::ANN},
      {"sl", {"kem", "vet"}, "bim", "ling", Variant::ANN},
      {"sl", {"bim", "kem"}, "ling", "vet", Variant::ANN},
      {"sl", {"bim", "ling"}, "kem", "vet", Variant::ANN},
      {"sl", {"ling", "kem"}, "bim", "vet", Variant::ANN},
      {"sl", {"bim", "vet"}, "ling", "kem", Variant::ANN},
      {"sl", {"bim", "ling"}, "vet", "kem", Variant::ANN},
      {"sl", {"ling", "vet"}, "bim", "kem", Variant::ANN},
      {"sl", {"vet", "kem"}, "ling", "bim", Variant::ANN},
      {"sl", {"vet", "ling"}, "kem", "bim", Variant::ANN},
      {"sl", {"ling", "kem"}, "vet", "bim", Variant::ANN},
  };
  return layout;
}

/// The 12 two-train/one-val/one-test rotations over a four-domain corpus.
/// Corpora with the bim/kem/vet/ling domains follow the reported row layout;
/// any other four domains are rotated generically (tests and validation
/// domains in reverse sorted order, train pair in sorted order).
inline std::vector<SplitSpec> enumerate_rsdo5_splits(const Corpus& corpus, std::string language = {},
                                                     Variant variant = Variant::ANN) {
  if (language.empty()) {
    const auto langs = corpus.languages();
    if (langs.size() != 1) {
      throw Error(ErrorKind::InvalidArgument, "corpus has " + std::to_string(langs.size()) +
                                                  " languages; name the one to rotate");
    }
    language = *langs.begin();
  }
  const auto domains = corpus.domains(language);
  if (domains.size() != 4) {
    throw Error(ErrorKind::WrongDomainCount,
                "rotation needs exactly 4 domains, found " + std::to_string(domains.size()));
  }

  std::vector<SplitSpec> out;
  if (domains == std::set<std::string>{"bim", "kem", "vet", "ling"}) {
    out = rsdo5_layout();
  } else {
    std::vector<std::string> order(domains.begin(), domains.end());
    for (auto test = order.rbegin(); test != order.rend(); ++test) {
      std::vector<std::string> rest;
      for (const auto& d : order) {
        if (d != *test) rest.push_back(d);
      }
      for (auto val = rest.rbegin(); val != rest.rend(); ++val) {
        SplitSpec spec;
        spec.val_domain = *val;
        spec.test_domain = *test;
        for (const auto& d : rest) {
          if (d != *val) spec.train_domains.push_back(d);
        }
        out.push_back(std::move(spec));
      }
    }
  }
  for (auto& spec : out) {
    spec.language = language;
    spec.variant = variant;
  }
  return out;
}

}  // namespace ate
