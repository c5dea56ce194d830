#pragma once

// aSCED construction and orchestration: splitter generation, extended check
// matrices H^(l), virtual syndromes, overcomplete matrices H_oc = M H^(l),
// and minimum-weight candidate selection across K = L * 2^delta paths.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qdec/bp4.hpp"
#include "qdec/channel.hpp"
#include "qdec/codes.hpp"
#include "qdec/gf2.hpp"
#include "qdec/pauli.hpp"

namespace qdec {

// X-type rows live in A_X (embedded as (r|0)), Z-type rows in A_Z ((0|r)).
// For even delta both blocks hold delta/2 rows; odd delta puts the extra
// row in A_X, which single-splitter verification (delta = 1) relies on.
struct SplitterSet {
  BinaryMatrix a_x;   // d_x x n
  BinaryMatrix a_z;   // d_z x n
  std::size_t delta = 0;

  std::size_t dx() const { return a_x.rows(); }
  std::size_t dz() const { return a_z.rows(); }
};

inline SymplecticVector embed_x_row(const BinaryVector& r) {
  const std::size_t n = r.size();
  SymplecticVector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (r.get(i)) v.set_x(i, true);
  }
  return v;
}

inline SymplecticVector embed_z_row(const BinaryVector& r) {
  const std::size_t n = r.size();
  SymplecticVector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (r.get(i)) v.set_z(i, true);
  }
  return v;
}

// Splitters as vectors of F2^{2n}, A_X rows first, then A_Z rows.
inline std::vector<SymplecticVector> embedded_splitters(const SplitterSet& s) {
  std::vector<SymplecticVector> out;
  out.reserve(s.delta);
  for (std::size_t r = 0; r < s.a_x.rows(); ++r) {
    out.push_back(embed_x_row(s.a_x.row(r)));
  }
  for (std::size_t r = 0; r < s.a_z.rows(); ++r) {
    out.push_back(embed_z_row(s.a_z.row(r)));
  }
  return out;
}

struct OvercompleteParams {
  std::size_t m_oc = 0;            // row count of the overcomplete matrix
  std::size_t max_row_weight = 0;  // weight cap for redundant rows
  uint64_t search_budget = 20000;  // information-set sampling rounds
  bool per_component = false;      // m_oc counts per X/Z block when true
};

struct Batch {
  BinaryMatrix h_ext;  // (m + delta) x 2n in the block order HX, AX, HZ, AZ
  SplitterSet splitters;
  std::optional<BinaryMatrix> h_oc;   // m_oc x 2n
  std::optional<BinaryMatrix> m_map;  // m_oc x (m + delta), h_oc = m_map h_ext
  std::size_t m_x = 0;                // X-check rows of the base matrix
  std::size_t oc_shortfall = 0;       // rows short of the requested m_oc

  const BinaryMatrix& working_matrix() const {
    return h_oc ? *h_oc : h_ext;
  }

  // z_delta = (z_X, g_X, z_Z, g_Z): virtual bits slot in right after their
  // component's measured checks.
  BinaryVector extended_syndrome(const BinaryVector& z_measured,
                                 const BinaryVector& g) const {
    const std::size_t dx = splitters.dx();
    const std::size_t dz = splitters.dz();
    if (g.size() != dx + dz) {
      throw std::invalid_argument("extended_syndrome: virtual bit count != delta");
    }
    const std::size_t m = h_ext.rows() - dx - dz;
    if (z_measured.size() != m) {
      throw std::invalid_argument("extended_syndrome: measured length mismatch");
    }
    BinaryVector z(h_ext.rows());
    std::size_t pos = 0;
    for (std::size_t j = 0; j < m_x; ++j) z.set(pos++, z_measured.get(j));
    for (std::size_t t = 0; t < dx; ++t) z.set(pos++, g.get(t));
    for (std::size_t j = m_x; j < m; ++j) z.set(pos++, z_measured.get(j));
    for (std::size_t t = 0; t < dz; ++t) z.set(pos++, g.get(dx + t));
    return z;
  }
};

struct EnsembleConfig {
  std::size_t l_batches = 1;
  std::size_t delta = 2;
  std::size_t splitter_weight = 4;
  std::optional<OvercompleteParams> overcomplete;
  Bp4Config decoder;
  bool include_plain_path = false;

  std::size_t paths_per_batch() const { return std::size_t{1} << delta; }
  std::size_t num_paths() const {
    return l_batches * paths_per_batch() + (include_plain_path ? 1 : 0);
  }
};

// g_delta for the path with 0-based index p (the paper's delta - 1), most
// significant bit first; the leading bits feed g_X.
inline BinaryVector path_virtual_bits(std::size_t delta, std::size_t p) {
  BinaryVector g(delta);
  for (std::size_t t = 0; t < delta; ++t) {
    g.set(t, (p >> (delta - 1 - t)) & 1);
  }
  return g;
}

namespace detail {

inline std::size_t and_weight(const BinaryVector& a, const BinaryVector& b) {
  std::size_t w = 0;
  for (std::size_t i = 0; i < a.words().size(); ++i) {
    w += std::popcount(a.words()[i] & b.words()[i]);
  }
  return w;
}

// Uniform weight-w support over n columns.
inline BinaryVector random_support(std::size_t n, std::size_t w,
                                   RandomStream& stream) {
  BinaryVector v(n);
  std::size_t placed = 0;
  while (placed < w) {
    const std::size_t c = std::size_t(stream.next_below(n));
    if (!v.get(c)) {
      v.set(c, true);
      ++placed;
    }
  }
  return v;
}

}  // namespace detail

// Rejection-samples weight-w rows per component, enforcing (a) support
// overlap <= 1 with every existing row of the same component block, which
// keeps the component Tanner graphs free of new 4-cycles, and (b) joint
// independence of the embedded rows from rowspace(stack(H, logical_basis)),
// i.e. jointly independent nonzero detectable components.
inline SplitterSet generate_splitters(const StabilizerCode& code,
                                      std::size_t delta, std::size_t weight,
                                      RandomStream& stream) {
  const std::size_t n = code.n();
  if (delta > code.n() - code.k()) {
    throw std::invalid_argument("generate_splitters: delta > n - k");
  }
  if (delta > 0 && weight < 2) {
    throw std::invalid_argument("generate_splitters: weight must be >= 2");
  }
  if (!code.css()) {
    throw std::invalid_argument("generate_splitters: code must expose CSS blocks");
  }
  const std::size_t dx = (delta + 1) / 2;
  const std::size_t dz = delta / 2;

  RowSpace span(vstack(code.h(), code.logical_basis()));
  constexpr uint64_t kAttemptsPerRow = 10000;

  auto draw_rows = [&](const BinaryMatrix& component, std::size_t count,
                       bool x_type) {
    std::vector<BinaryVector> accepted;
    std::vector<BinaryVector> block_rows;
    for (std::size_t r = 0; r < component.rows(); ++r) {
      block_rows.push_back(component.row(r));
    }
    while (accepted.size() < count) {
      bool found = false;
      for (uint64_t attempt = 0; attempt < kAttemptsPerRow; ++attempt) {
        BinaryVector cand = detail::random_support(n, weight, stream);
        bool overlap_ok = true;
        for (const BinaryVector& row : block_rows) {
          if (detail::and_weight(cand, row) > 1) {
            overlap_ok = false;
            break;
          }
        }
        if (!overlap_ok) continue;
        const SymplecticVector embedded =
            x_type ? embed_x_row(cand) : embed_z_row(cand);
        if (!span.insert(embedded.bits())) continue;  // dependent, reject
        block_rows.push_back(cand);
        accepted.push_back(std::move(cand));
        found = true;
        break;
      }
      if (!found) {
        throw std::runtime_error(
            "generate_splitters: attempt budget exhausted; retry with a new stream");
      }
    }
    return accepted;
  };

  SplitterSet out;
  out.delta = delta;
  const std::vector<BinaryVector> ax = draw_rows(code.css()->hx, dx, true);
  const std::vector<BinaryVector> az = draw_rows(code.css()->hz, dz, false);
  out.a_x = ax.empty() ? BinaryMatrix(0, n) : BinaryMatrix::from_rows(ax);
  out.a_z = az.empty() ? BinaryMatrix(0, n) : BinaryMatrix::from_rows(az);
  return out;
}

namespace detail {

struct OcRow {
  BinaryVector row;     // length n, the redundant check
  BinaryVector coeffs;  // length = component stack rows, row = coeffs * stack
};

// Randomized information-set sampling over the row space of `stack`: each
// round row-reduces under a fresh column permutation and harvests reduced
// rows of weight <= max_weight. Low-weight vectors of structured codes
// recur across rounds, so the budget acts as a coupon-collector horizon.
inline std::vector<OcRow> sample_low_weight_rows(const BinaryMatrix& stack,
                                                 std::size_t max_weight,
                                                 std::size_t quota,
                                                 uint64_t budget,
                                                 RandomStream& stream) {
  const std::size_t n = stack.cols();
  const std::size_t rows = stack.rows();
  std::set<std::vector<uint64_t>> seen;
  for (std::size_t r = 0; r < rows; ++r) {
    seen.insert(stack.row(r).words());  // base rows are already in the matrix
  }
  std::vector<OcRow> found;
  std::vector<std::size_t> perm(n);
  for (uint64_t round = 0; round < budget && found.size() < quota; ++round) {
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) {
      std::swap(perm[i - 1], perm[stream.next_below(i)]);
    }
    BinaryMatrix permuted(rows, n);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        if (stack.get(r, c)) permuted.set(r, perm[c], true);
      }
    }
    RowReduction red = row_reduce(permuted);
    for (std::size_t r = 0; r < red.pivots.size(); ++r) {
      BinaryVector v(n);
      bool light = true;
      std::size_t w = 0;
      for (std::size_t c = 0; c < n && light; ++c) {
        if (red.reduced.get(r, perm[c])) {
          v.set(c, true);
          light = ++w <= max_weight;
        }
      }
      if (!light || w == 0) continue;
      if (!seen.insert(v.words()).second) continue;
      found.push_back({std::move(v), red.transform.row(r)});
    }
  }
  // Canonical order: sparsest first, ties by bit pattern.
  std::sort(found.begin(), found.end(), [](const OcRow& a, const OcRow& b) {
    const std::size_t wa = a.row.weight(), wb = b.row.weight();
    if (wa != wb) return wa < wb;
    return a.row.words() < b.row.words();
  });
  if (found.size() > quota) found.resize(quota);
  return found;
}

}  // namespace detail

// Assembles the extended matrix in the paper's block order and, when
// requested, the overcomplete pair (H_oc, M). M keeps the (m + delta)
// identity on top (all original and splitter checks are retained) and adds
// low-weight row combinations found per component. If fewer than m_oc rows
// exist within the weight cap, the batch reports the shortfall instead of
// failing.
inline Batch build_batch(const StabilizerCode& code, SplitterSet splitters,
                         const std::optional<OvercompleteParams>& oc_params,
                         RandomStream& stream) {
  if (!code.css()) {
    throw std::invalid_argument("build_batch: code must expose CSS blocks");
  }
  const std::size_t n = code.n();
  const std::size_t m = code.num_checks();
  const std::size_t m_x = code.css()->hx.rows();
  const std::size_t m_z = code.css()->hz.rows();
  const std::size_t dx = splitters.dx();
  const std::size_t dz = splitters.dz();
  const std::size_t delta = splitters.delta;

  Batch batch;
  batch.m_x = m_x;
  batch.h_ext = BinaryMatrix(m + delta, 2 * n);
  std::size_t pos = 0;
  for (std::size_t j = 0; j < m_x; ++j) {
    batch.h_ext.set_row(pos++, code.h().row(j));
  }
  for (std::size_t t = 0; t < dx; ++t) {
    batch.h_ext.set_row(pos++, embed_x_row(splitters.a_x.row(t)).bits());
  }
  for (std::size_t j = m_x; j < m; ++j) {
    batch.h_ext.set_row(pos++, code.h().row(j));
  }
  for (std::size_t t = 0; t < dz; ++t) {
    batch.h_ext.set_row(pos++, embed_z_row(splitters.a_z.row(t)).bits());
  }
  batch.splitters = std::move(splitters);

  if (rank(batch.h_ext) != code.rank_h() + delta) {
    throw std::logic_error("build_batch: rank(h_ext) != rank(H) + delta");
  }

  if (oc_params) {
    const std::size_t target_total = oc_params->per_component
                                         ? 2 * oc_params->m_oc
                                         : oc_params->m_oc;
    BinaryMatrix m_map = BinaryMatrix::identity(m + delta);
    if (target_total > m + delta) {
      const std::size_t extra_total = target_total - (m + delta);
      const std::size_t extra_x = (extra_total + 1) / 2;
      const std::size_t extra_z = extra_total / 2;

      BinaryMatrix stack_x = vstack(code.css()->hx, batch.splitters.a_x);
      BinaryMatrix stack_z = vstack(code.css()->hz, batch.splitters.a_z);
      const auto rows_x = detail::sample_low_weight_rows(
          stack_x, oc_params->max_row_weight, extra_x,
          oc_params->search_budget, stream);
      const auto rows_z = detail::sample_low_weight_rows(
          stack_z, oc_params->max_row_weight, extra_z,
          oc_params->search_budget, stream);
      batch.oc_shortfall = (extra_x - rows_x.size()) + (extra_z - rows_z.size());

      // Coefficients over the component stacks map to h_ext row positions:
      // X rows sit at [0, m_x + dx), Z rows at [m_x + dx, m + delta).
      for (const auto& r : rows_x) {
        BinaryVector row(m + delta);
        for (std::size_t j = 0; j < r.coeffs.size(); ++j) {
          if (r.coeffs.get(j)) row.set(j, true);
        }
        m_map.append_row(row);
      }
      const std::size_t z_off = m_x + dx;
      for (const auto& r : rows_z) {
        BinaryVector row(m + delta);
        for (std::size_t j = 0; j < r.coeffs.size(); ++j) {
          if (r.coeffs.get(j)) row.set(z_off + j, true);
        }
        m_map.append_row(row);
      }
    }
    batch.h_oc = mat_mul(m_map, batch.h_ext);
    batch.m_map = std::move(m_map);
  }
  return batch;
}

struct Ensemble {
  std::vector<Batch> batches;
  EnsembleConfig config;
  std::size_t duplicate_batches = 0;
};

inline Ensemble build_ensemble(const StabilizerCode& code,
                               const EnsembleConfig& cfg,
                               RandomStream& stream) {
  if (cfg.l_batches == 0) {
    throw std::invalid_argument("build_ensemble: need at least one batch");
  }
  Ensemble ens;
  ens.config = cfg;
  std::set<std::string> seen;
  for (std::size_t l = 0; l < cfg.l_batches; ++l) {
    SplitterSet s = generate_splitters(code, cfg.delta, cfg.splitter_weight,
                                       stream);
    Batch b = build_batch(code, std::move(s), cfg.overcomplete, stream);
    if (!seen.insert(b.h_ext.to_string()).second) ++ens.duplicate_batches;
    ens.batches.push_back(std::move(b));
  }
  return ens;
}

struct PathStat {
  std::size_t path_id = 0;
  bool converged = false;
  int iterations = 0;
  bool admitted = false;
  std::size_t weight = 0;
};

struct AscedResult {
  std::optional<SymplecticVector> estimate;
  std::size_t winning_path = 0;
  std::vector<PathStat> paths;
};

// Minimum Pauli weight, ties broken by lowest path id.
inline std::pair<std::size_t, SymplecticVector> select_min_weight(
    const std::vector<std::pair<std::size_t, SymplecticVector>>& candidates) {
  if (candidates.empty()) {
    throw std::invalid_argument("select_min_weight: empty candidate set");
  }
  std::size_t best = 0;
  std::size_t best_weight = pauli_weight(candidates[0].second);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const std::size_t w = pauli_weight(candidates[i].second);
    if (w < best_weight ||
        (w == best_weight &&
         candidates[i].first < candidates[best].first)) {
      best = i;
      best_weight = w;
    }
  }
  return candidates[best];
}

// Persistent path decoders for one ensemble; reuse across trials. The
// referenced code and ensemble must outlive this object. Not thread-safe:
// one instance per worker thread.
class EnsembleDecoder {
 public:
  EnsembleDecoder(const StabilizerCode& code, const Ensemble& ensemble)
      : code_(&code), ensemble_(&ensemble) {
    decoders_.reserve(ensemble.batches.size());
    for (const Batch& b : ensemble.batches) {
      decoders_.emplace_back(b.working_matrix());
    }
    if (ensemble.config.include_plain_path) {
      plain_.emplace(code.h());
    }
  }

  // Runs all K paths; a path's estimate joins the candidate set iff it
  // satisfies the measured syndrome rows (virtual and redundant bits do not
  // gate admission). Empty candidate set leaves the estimate absent.
  AscedResult run(const BinaryVector& z_measured) {
    const EnsembleConfig& cfg = ensemble_->config;
    const std::size_t paths_per_batch = cfg.paths_per_batch();
    AscedResult out;
    out.paths.reserve(cfg.num_paths());
    std::optional<SymplecticVector> best;
    std::size_t best_weight = 0;
    std::size_t best_path = 0;

    auto consider = [&](std::size_t path_id, const DecodeResult& res) {
      PathStat stat;
      stat.path_id = path_id;
      stat.converged = res.converged;
      stat.iterations = res.iterations_used;
      stat.weight = pauli_weight(res.estimate);
      stat.admitted =
          syndrome(code_->h(), res.estimate) == z_measured;
      if (stat.admitted &&
          (!best || stat.weight < best_weight ||
           (stat.weight == best_weight && path_id < best_path))) {
        best = res.estimate;
        best_weight = stat.weight;
        best_path = path_id;
      }
      out.paths.push_back(stat);
    };

    for (std::size_t l = 0; l < ensemble_->batches.size(); ++l) {
      const Batch& batch = ensemble_->batches[l];
      for (std::size_t p = 0; p < paths_per_batch; ++p) {
        const BinaryVector g = path_virtual_bits(cfg.delta, p);
        BinaryVector z_work = batch.extended_syndrome(z_measured, g);
        if (batch.m_map) z_work = mat_vec_mul(*batch.m_map, z_work);
        const DecodeResult res = decoders_[l].decode(z_work, cfg.decoder);
        consider(l * paths_per_batch + p, res);
      }
    }
    if (plain_) {
      const DecodeResult res = plain_->decode(z_measured, cfg.decoder);
      consider(ensemble_->batches.size() * paths_per_batch, res);
    }
    if (best) {
      out.estimate = std::move(best);
      out.winning_path = best_path;
    }
    return out;
  }

 private:
  const StabilizerCode* code_;
  const Ensemble* ensemble_;
  std::vector<Bp4Decoder> decoders_;
  std::optional<Bp4Decoder> plain_;
};

inline AscedResult asced_decode(const StabilizerCode& code,
                                const std::vector<Batch>& batches,
                                const BinaryVector& z_measured,
                                const EnsembleConfig& cfg) {
  Ensemble ens;
  ens.batches = batches;
  ens.config = cfg;
  EnsembleDecoder dec(code, ens);
  return dec.run(z_measured);
}

}  // namespace qdec
