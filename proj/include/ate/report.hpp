#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "ate/ensemble.hpp"
#include "ate/error.hpp"
#include "ate/evaluate.hpp"
#include "ate/run_record.hpp"

namespace ate {

enum class ReportKind { acter_table, rsdo5_table, ensemble_improvement };

inline ReportKind report_kind_from_string(std::string_view s) {
  if (s == "acter_table") return ReportKind::acter_table;
  if (s == "rsdo5_table") return ReportKind::rsdo5_table;
  if (s == "ensemble_improvement") return ReportKind::ensemble_improvement;
  throw Error(ErrorKind::InvalidConfig, "unknown report kind '" + std::string(s) + "'");
}

struct Report {
  std::string markdown;
  std::string tsv;
};

namespace detail {

struct Column {
  std::string name;
  bool numeric = false;
};

/// A block of rows under one heading; numeric cells hold raw values so the
/// best one per column can be marked.
struct TableBlock {
  std::string heading;
  std::vector<std::string> group_cells;  // prefixed to every TSV row
  std::vector<std::vector<std::string>> text_cells;
  std::vector<std::vector<double>> numeric_cells;
};

inline Report render_blocks(const std::string& title, const std::vector<std::string>& group_columns,
                            const std::vector<Column>& columns, const std::vector<TableBlock>& blocks,
                            const std::function<std::string(double)>& format = format_percent) {
  Report report;
  report.markdown = "# " + title + "\n";
  for (std::size_t g = 0; g < group_columns.size(); ++g) report.tsv += group_columns[g] + "\t";
  for (std::size_t c = 0; c < columns.size(); ++c) report.tsv += columns[c].name + (c + 1 < columns.size() ? "\t" : "\n");

  for (const auto& block : blocks) {
    report.markdown += "\n## " + block.heading + "\n\n|";
    for (const auto& c : columns) report.markdown += " " + c.name + " |";
    report.markdown += "\n|";
    for (const auto& c : columns) report.markdown += c.numeric ? "---:|" : "---|";
    report.markdown += "\n";

    std::size_t numeric_count = block.numeric_cells.empty() ? 0 : block.numeric_cells.front().size();
    std::vector<std::string> best(numeric_count);
    for (std::size_t k = 0; k < numeric_count; ++k) {
      double top = block.numeric_cells.front()[k];
      for (const auto& row : block.numeric_cells) top = std::max(top, row[k]);
      best[k] = format(top);
    }

    for (std::size_t r = 0; r < block.text_cells.size(); ++r) {
      report.markdown += "|";
      for (const auto& g : block.group_cells) report.tsv += g + "\t";
      std::size_t text_i = 0;
      std::size_t num_i = 0;
      for (std::size_t c = 0; c < columns.size(); ++c) {
        std::string cell;
        std::string md;
        if (columns[c].numeric) {
          cell = format(block.numeric_cells[r][num_i]);
          md = cell == best[num_i] ? "**" + cell + "**" : cell;
          ++num_i;
        } else {
          cell = block.text_cells[r][text_i++];
          md = cell;
        }
        report.markdown += " " + md + " |";
        report.tsv += cell + (c + 1 < columns.size() ? "\t" : "\n");
      }
      report.markdown += "\n";
    }
  }
  return report;
}

}  // namespace detail

/// Renders Markdown and TSV views of the ledger. Output depends only on the
/// ledger's latest records, so re-rendering the same ledger is byte-identical.
inline Report render_report(const std::vector<RunRecord>& ledger, ReportKind kind) {
  const auto records = latest_records(ledger);
  std::vector<const RunRecord*> rows;
  for (const auto& r : records) {
    if (r.is_ensemble() == (kind == ReportKind::ensemble_improvement)) rows.push_back(&r);
  }
  if (rows.empty()) throw Error(ErrorKind::EmptyLedger, "ledger has no records for this report");

  using Key = std::tuple<std::string, std::string, std::string>;
  std::map<Key, std::vector<const RunRecord*>> groups;
  std::vector<detail::TableBlock> blocks;

  switch (kind) {
    case ReportKind::acter_table: {
      for (const auto* r : rows) groups[{r->language, r->split.test_domain, ""}].push_back(r);
      for (auto& [key, members] : groups) {
        std::sort(members.begin(), members.end(), [](const RunRecord* a, const RunRecord* b) {
          return std::tuple(a->model_id(), to_string(a->variant), describe(a->split), a->run_id) <
                 std::tuple(b->model_id(), to_string(b->variant), describe(b->split), b->run_id);
        });
        detail::TableBlock block;
        block.heading = std::get<0>(key) + " / test " + std::get<1>(key);
        block.group_cells = {std::get<0>(key), std::get<1>(key)};
        for (const auto* r : members) {
          block.text_cells.push_back({r->model_id(), to_string(r->pool), to_string(r->variant)});
          block.numeric_cells.push_back({r->metrics.precision, r->metrics.recall, r->metrics.f1});
        }
        blocks.push_back(std::move(block));
      }
      return detail::render_blocks("Term extraction results", {"language", "test"},
                                   {{"model", false}, {"pool", false}, {"variant", false},
                                    {"precision", true}, {"recall", true}, {"f1", true}},
                                   blocks);
    }
    case ReportKind::rsdo5_table: {
      for (const auto* r : rows) groups[{r->language, r->split.test_domain, to_string(r->variant)}].push_back(r);
      for (auto& [key, members] : groups) {
        std::sort(members.begin(), members.end(), [](const RunRecord* a, const RunRecord* b) {
          return std::tuple(a->model_id(), describe(a->split), a->run_id) <
                 std::tuple(b->model_id(), describe(b->split), b->run_id);
        });
        detail::TableBlock block;
        block.heading = std::get<0>(key) + " / test " + std::get<1>(key) + " / " + std::get<2>(key);
        block.group_cells = {std::get<0>(key), std::get<2>(key)};
        for (const auto* r : members) {
          std::string train;
          for (std::size_t i = 0; i < r->split.train_domains.size(); ++i) {
            train += (i ? " + " : "") + r->split.train_domains[i];
          }
          block.text_cells.push_back({train, r->split.val_domain.empty() ? "holdout" : r->split.val_domain,
                                      r->split.test_domain, r->model_id()});
          block.numeric_cells.push_back({r->metrics.precision, r->metrics.recall, r->metrics.f1});
        }
        blocks.push_back(std::move(block));
      }
      return detail::render_blocks("Rotating-split results", {"language", "variant"},
                                   {{"train", false}, {"val", false}, {"test", false}, {"model", false},
                                    {"precision", true}, {"recall", true}, {"f1", true}},
                                   blocks);
    }
    case ReportKind::ensemble_improvement: {
      for (const auto* r : rows) groups[{r->language, r->split.test_domain, to_string(r->variant)}].push_back(r);
      for (auto& [key, members] : groups) {
        // One row per (strategy, combination); the most recent record wins.
        std::map<std::pair<int, int>, const RunRecord*> latest;
        for (const auto* r : members) {
          latest[{static_cast<int>(r->ensemble->strategy), static_cast<int>(r->ensemble->combination)}] = r;
        }
        detail::TableBlock block;
        block.heading = std::get<0>(key) + " / test " + std::get<1>(key) + " / " + std::get<2>(key);
        block.group_cells = {std::get<0>(key), std::get<1>(key), std::get<2>(key)};
        for (const auto& [_, r] : latest) {
          const auto& e = *r->ensemble;
          block.text_cells.push_back({to_string(e.strategy), to_string(e.combination), e.members[0], e.members[1]});
          block.numeric_cells.push_back({e.best_single_f1, r->metrics.f1, e.delta_f1_vs_best_single});
        }
        blocks.push_back(std::move(block));
      }
      return detail::render_blocks("Ensemble improvement over the best single model",
                                   {"language", "test", "variant"},
                                   {{"strategy", false}, {"combination", false}, {"member_a", false},
                                    {"member_b", false}, {"best_single_f1", true}, {"ensemble_f1", true},
                                    {"delta_f1", true}},
                                   blocks);
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown report kind");
}

}  // namespace ate
