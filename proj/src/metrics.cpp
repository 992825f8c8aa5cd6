#include "stylecast/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <set>

#include "stylecast/errors.hpp"
#include "stylecast/json_io.hpp"

namespace stylecast {

std::vector<double> add_one_distribution(const std::vector<std::int64_t>& counts) {
  double sum = 0.0;
  for (std::int64_t c : counts) {
    if (c < 0) throw DataError("add_one_distribution: negative count");
    sum += static_cast<double>(c + 1);
  }
  if (counts.empty()) throw DataError("add_one_distribution: empty domain");
  std::vector<double> p(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    p[i] = static_cast<double>(counts[i] + 1) / sum;
  }
  return p;
}

double kl_divergence(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw DataError("kl_divergence: size mismatch");
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] <= 0.0) throw DataError("kl_divergence: zero in reference support");
    kl += p[i] * std::log(p[i] / q[i]);
  }
  return kl;
}

std::map<std::string, std::int64_t> token_counts(const Corpus& corpus) {
  std::map<std::string, std::int64_t> counts;
  for (const auto& comment : corpus.comments) {
    for (const auto& token : comment.tokens) ++counts[token];
  }
  return counts;
}

double dic_rate(const Corpus& reference, const Corpus& generated) {
  const auto ref_counts = token_counts(reference);
  if (ref_counts.empty()) {
    throw DataError("dic_rate: reference corpus has no tokens");
  }
  const auto gen_counts = token_counts(generated);
  return static_cast<double>(gen_counts.size()) / static_cast<double>(ref_counts.size());
}

double wf_kl(const Corpus& reference, const Corpus& generated) {
  if (reference.empty() || generated.empty()) {
    throw DataError("wf_kl: both corpora must be non-empty");
  }
  const auto ref_counts = token_counts(reference);
  const auto gen_counts = token_counts(generated);

  // Shared domain: union of unique tokens, in sorted order.
  std::set<std::string> domain;
  for (const auto& [t, c] : ref_counts) domain.insert(t);
  for (const auto& [t, c] : gen_counts) domain.insert(t);

  std::vector<std::int64_t> ref_vec, gen_vec;
  ref_vec.reserve(domain.size());
  gen_vec.reserve(domain.size());
  for (const auto& token : domain) {
    const auto r = ref_counts.find(token);
    const auto g = gen_counts.find(token);
    ref_vec.push_back(r == ref_counts.end() ? 0 : r->second);
    gen_vec.push_back(g == gen_counts.end() ? 0 : g->second);
  }
  return kl_divergence(add_one_distribution(ref_vec), add_one_distribution(gen_vec));
}

namespace {

std::vector<std::int64_t> tag_counts(const std::vector<TaggedSentence>& sentences) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(kTagCount), 0);
  for (const auto& s : sentences) {
    if (s.tags.size() != s.tokens.size()) {
      throw DataError("pos_kl: tagged sentence with mismatched lengths");
    }
    for (Tag t : s.tags) {
      const auto idx = static_cast<std::size_t>(t);
      if (idx >= counts.size()) throw DataError("pos_kl: tag outside the inventory");
      ++counts[idx];
    }
  }
  return counts;
}

}  // namespace

double pos_kl(const std::vector<TaggedSentence>& reference,
              const std::vector<TaggedSentence>& generated) {
  if (reference.empty() || generated.empty()) {
    throw DataError("pos_kl: both tag streams must be non-empty");
  }
  return kl_divergence(add_one_distribution(tag_counts(reference)),
                       add_one_distribution(tag_counts(generated)));
}

namespace {

// N-gram multiset of one token sequence; key = tokens joined with \x1e.
std::map<std::string, std::int64_t> ngrams(const std::vector<std::string>& tokens, int n) {
  std::map<std::string, std::int64_t> counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
    std::string key;
    for (int j = 0; j < n; ++j) {
      if (j > 0) key += '\x1e';
      key += tokens[i + static_cast<std::size_t>(j)];
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

double bleu4(const std::vector<std::vector<std::string>>& generated,
             const std::vector<std::vector<std::vector<std::string>>>& refs) {
  if (generated.empty()) throw DataError("bleu4: no generated comments");
  if (refs.size() != generated.size()) {
    throw DataError("bleu4: need one reference list per generated comment");
  }
  constexpr int kMaxOrder = 4;
  std::array<std::int64_t, kMaxOrder> clipped{};
  std::array<std::int64_t, kMaxOrder> total{};
  std::int64_t hyp_len_total = 0;
  std::int64_t ref_len_total = 0;

  for (std::size_t i = 0; i < generated.size(); ++i) {
    const auto& hyp = generated[i];
    const auto& ref_list = refs[i];
    if (ref_list.empty()) {
      throw DataError("bleu4: comment " + std::to_string(i) + " has no references");
    }
    hyp_len_total += static_cast<std::int64_t>(hyp.size());

    // Closest reference length; ties to the shorter one.
    std::int64_t best_ref_len = static_cast<std::int64_t>(ref_list.front().size());
    for (const auto& ref : ref_list) {
      const auto len = static_cast<std::int64_t>(ref.size());
      const auto hyp_len = static_cast<std::int64_t>(hyp.size());
      if (std::llabs(len - hyp_len) < std::llabs(best_ref_len - hyp_len) ||
          (std::llabs(len - hyp_len) == std::llabs(best_ref_len - hyp_len) &&
           len < best_ref_len)) {
        best_ref_len = len;
      }
    }
    ref_len_total += best_ref_len;

    for (int n = 1; n <= kMaxOrder; ++n) {
      const auto hyp_ngrams = ngrams(hyp, n);
      if (hyp_ngrams.empty()) continue;
      std::map<std::string, std::int64_t> max_ref;
      for (const auto& ref : ref_list) {
        for (const auto& [key, count] : ngrams(ref, n)) {
          max_ref[key] = std::max(max_ref[key], count);
        }
      }
      for (const auto& [key, count] : hyp_ngrams) {
        total[static_cast<std::size_t>(n - 1)] += count;
        const auto it = max_ref.find(key);
        if (it != max_ref.end()) {
          clipped[static_cast<std::size_t>(n - 1)] += std::min(count, it->second);
        }
      }
    }
  }

  double log_precision = 0.0;
  for (int n = 0; n < kMaxOrder; ++n) {
    const auto nn = static_cast<std::size_t>(n);
    if (total[nn] == 0 || clipped[nn] == 0) return 0.0;
    log_precision += 0.25 * std::log(static_cast<double>(clipped[nn]) /
                                     static_cast<double>(total[nn]));
  }
  if (hyp_len_total == 0) return 0.0;
  const double bp = hyp_len_total > ref_len_total
                        ? 1.0
                        : std::exp(1.0 - static_cast<double>(ref_len_total) /
                                             static_cast<double>(hyp_len_total));
  return bp * std::exp(log_precision);
}

DiversityReport report(const Corpus& reference, const Corpus& generated,
                       const PosTagger& tagger,
                       const std::vector<std::vector<std::vector<std::string>>>& refs_for_bleu,
                       const std::vector<TaggedSentence>* reference_tags,
                       const std::vector<TaggedSentence>* generated_tags) {
  DiversityReport rep;
  const auto ref_counts = token_counts(reference);
  const auto gen_counts = token_counts(generated);
  rep.n_t = static_cast<std::int64_t>(ref_counts.size());
  rep.n_g = static_cast<std::int64_t>(gen_counts.size());

  rep.dic_rate = dic_rate(reference, generated);
  rep.wf_kl = wf_kl(reference, generated);
  {
    std::set<std::string> domain;
    for (const auto& [t, c] : ref_counts) domain.insert(t);
    for (const auto& [t, c] : gen_counts) domain.insert(t);
    rep.word_domain_size = static_cast<std::int64_t>(domain.size());
  }

  std::vector<TaggedSentence> ref_tagged, gen_tagged;
  if (!reference_tags) {
    for (const auto& c : reference.comments) ref_tagged.push_back(tagger.tag(c.tokens));
  }
  if (!generated_tags) {
    for (const auto& c : generated.comments) gen_tagged.push_back(tagger.tag(c.tokens));
  }
  rep.pos_kl = pos_kl(reference_tags ? *reference_tags : ref_tagged,
                      generated_tags ? *generated_tags : gen_tagged);

  std::vector<std::vector<std::string>> gen_tokens;
  gen_tokens.reserve(generated.size());
  for (const auto& c : generated.comments) gen_tokens.push_back(c.tokens);
  rep.bleu4 = bleu4(gen_tokens, refs_for_bleu);

  rep.provenance["reference"] = reference.provenance.source;
  rep.provenance["generated"] = generated.provenance.source;
  rep.provenance["tagger"] =
      (reference_tags || generated_tags) ? "external" : "builtin-cascade";
  rep.provenance["meteor"] = "not computed";
  return rep;
}

nlohmann::json DiversityReport::to_json() const {
  return nlohmann::json{{"format_version", kFormatVersion},
                        {"dic_rate", dic_rate},
                        {"wf_kl", wf_kl},
                        {"pos_kl", pos_kl},
                        {"bleu4", bleu4},
                        {"n_t", n_t},
                        {"n_g", n_g},
                        {"word_domain_size", word_domain_size},
                        {"tag_domain_size", tag_domain_size},
                        {"provenance", provenance}};
}

DiversityReport DiversityReport::from_json(const nlohmann::json& j) {
  require_format_version(j, "report");
  DiversityReport rep;
  try {
    rep.dic_rate = j.at("dic_rate").get<double>();
    rep.wf_kl = j.at("wf_kl").get<double>();
    rep.pos_kl = j.at("pos_kl").get<double>();
    rep.bleu4 = j.at("bleu4").get<double>();
    rep.n_t = j.at("n_t").get<std::int64_t>();
    rep.n_g = j.at("n_g").get<std::int64_t>();
    rep.word_domain_size = j.at("word_domain_size").get<std::int64_t>();
    rep.tag_domain_size = j.at("tag_domain_size").get<std::int64_t>();
    rep.provenance = j.at("provenance").get<std::map<std::string, std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("report: ") + e.what());
  }
  return rep;
}

}  // namespace stylecast
