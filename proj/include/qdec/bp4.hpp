#pragma once

// Log-domain refined quaternary belief propagation, syndrome-conditioned.
// Messages from variable to check nodes are scalar LLRs produced by the
// belief quantization operator; check updates use the tanh product rule
// with the syndrome sign. The decoder below never materializes the
// per-edge LLR vectors: for an edge with label eta, the quantized message
// equals a per-qubit base value minus the edge's previous check-to-variable
// message, which is algebraically identical to composing vn_update and
// quantize but costs O(1) transcendentals per edge.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qdec/gf2.hpp"
#include "qdec/pauli.hpp"

namespace qdec {

// Component order follows the paper's (X, Z, Y) convention.
struct LlrVector {
  double x = 0.0;
  double z = 0.0;
  double y = 0.0;

  double component(Pauli p) const {
    switch (p) {
      case Pauli::X: return x;
      case Pauli::Z: return z;
      case Pauli::Y: return y;
      default: throw std::invalid_argument("LlrVector: no component for I");
    }
  }
};

enum class Schedule { flooding, serial };

struct Bp4Config {
  double p0 = 0.1;       // initialization probability, in (0, 0.75)
  int i_max = 25;        // maximum number of iterations
  double clamp = 30.0;   // LLR magnitude cap
  Schedule schedule = Schedule::flooding;
};

struct DecodeResult {
  SymplecticVector estimate;
  bool converged = false;
  int iterations_used = 0;
};

namespace detail {

inline double softplus(double s) {  // ln(1 + e^s)
  if (s > 0.0) return s + std::log1p(std::exp(-s));
  return std::log1p(std::exp(s));
}

inline double logsumexp2(double a, double b) {
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

inline double clamp_llr(double v, double c) {
  return std::clamp(v, -c, c);
}

// Quantization bases for one qubit: for each label eta, the scalar LLR the
// qubit would send over an edge with that label if no message were excluded.
struct QuantBase {
  double v[3];  // indexed by label: 0 = X, 1 = Z, 2 = Y

  static QuantBase from_posterior(double lx, double lz, double ly) {
    const double s[3] = {-lx, -lz, -ly};
    QuantBase q;
    q.v[0] = softplus(s[0]) - logsumexp2(s[1], s[2]);
    q.v[1] = softplus(s[1]) - logsumexp2(s[0], s[2]);
    q.v[2] = softplus(s[2]) - logsumexp2(s[0], s[1]);
    return q;
  }
};

}  // namespace detail

// All three a-priori LLRs equal ln((1-p0)/(p0/3)).
inline LlrVector prior_llr(double p0) {
  if (!(p0 > 0.0 && p0 < 1.0)) {
    throw std::invalid_argument("prior_llr: p0 must be in (0,1)");
  }
  const double l = std::log(3.0 * (1.0 - p0) / p0);
  return {l, l, l};
}

// Belief quantization: lambda = ln((1 + e^{-L^eta}) / sum_{zeta != I,eta}
// e^{-L^zeta}), clamped.
inline double quantize(const LlrVector& msg, Pauli eta, double clamp = 30.0) {
  if (eta == Pauli::I) {
    throw std::invalid_argument("quantize: eta must be X, Y or Z");
  }
  double le = 0.0, la = 0.0, lb = 0.0;
  switch (eta) {
    case Pauli::X: le = msg.x; la = msg.z; lb = msg.y; break;
    case Pauli::Z: le = msg.z; la = msg.x; lb = msg.y; break;
    case Pauli::Y: le = msg.y; la = msg.x; lb = msg.z; break;
    default: break;
  }
  const double val = detail::softplus(-le) - detail::logsumexp2(-la, -lb);
  return detail::clamp_llr(val, clamp);
}

// Tanh-product check update; output k excludes incoming k, the syndrome bit
// flips all signs. Exclusion is done with prefix/suffix products.
inline std::vector<double> cn_update(const std::vector<double>& incoming,
                                     int z_bit, double clamp = 30.0) {
  if (incoming.empty()) {
    throw std::invalid_argument("cn_update: incoming must be non-empty");
  }
  const std::size_t deg = incoming.size();
  std::vector<double> t(deg), out(deg);
  for (std::size_t i = 0; i < deg; ++i) t[i] = std::tanh(0.5 * incoming[i]);
  const double sign = z_bit ? -1.0 : 1.0;
  std::vector<double> fwd(deg), bwd(deg);
  fwd[0] = t[0];
  for (std::size_t i = 1; i < deg; ++i) fwd[i] = fwd[i - 1] * t[i];
  bwd[deg - 1] = t[deg - 1];
  for (std::size_t i = deg - 1; i-- > 0;) bwd[i] = bwd[i + 1] * t[i];
  for (std::size_t i = 0; i < deg; ++i) {
    const double left = i == 0 ? 1.0 : fwd[i - 1];
    const double right = i == deg - 1 ? 1.0 : bwd[i + 1];
    out[i] = detail::clamp_llr(sign * 2.0 * std::atanh(left * right), clamp);
  }
  return out;
}

struct VnUpdateResult {
  std::vector<LlrVector> outgoing;  // one vector message per incident check
  LlrVector posterior;
};

// Component zeta of an outgoing message accumulates exactly the incoming
// scalars whose check label anticommutes with zeta; the posterior takes the
// full sums. outgoing[j] == posterior - own contribution of check j.
inline VnUpdateResult vn_update(const LlrVector& prior,
                                const std::vector<double>& incoming,
                                const std::vector<Pauli>& check_labels) {
  if (incoming.size() != check_labels.size()) {
    throw std::invalid_argument("vn_update: lists must be aligned");
  }
  double sum_all = 0.0;
  double sum_label[3] = {0.0, 0.0, 0.0};
  for (std::size_t j = 0; j < incoming.size(); ++j) {
    const Pauli label = check_labels[j];
    if (label == Pauli::I) {
      throw std::invalid_argument("vn_update: check label must be X, Y or Z");
    }
    sum_all += incoming[j];
    sum_label[int(label) - 1] += incoming[j];
  }
  VnUpdateResult res;
  res.posterior = {prior.x + sum_all - sum_label[int(Pauli::X) - 1],
                   prior.z + sum_all - sum_label[int(Pauli::Z) - 1],
                   prior.y + sum_all - sum_label[int(Pauli::Y) - 1]};
  res.outgoing.resize(incoming.size());
  for (std::size_t j = 0; j < incoming.size(); ++j) {
    LlrVector m = res.posterior;
    switch (check_labels[j]) {  // subtract from the anticommuting components
      case Pauli::X: m.z -= incoming[j]; m.y -= incoming[j]; break;
      case Pauli::Z: m.x -= incoming[j]; m.y -= incoming[j]; break;
      case Pauli::Y: m.x -= incoming[j]; m.z -= incoming[j]; break;
      default: break;
    }
    res.outgoing[j] = m;
  }
  return res;
}

// I iff all components positive, otherwise the minimizing Pauli with ties
// broken in the fixed order X < Y < Z.
inline Pauli hard_decision_single(const LlrVector& l) {
  if (l.x > 0.0 && l.z > 0.0 && l.y > 0.0) return Pauli::I;
  Pauli best = Pauli::X;
  double val = l.x;
  if (l.y < val) { best = Pauli::Y; val = l.y; }
  if (l.z < val) { best = Pauli::Z; val = l.z; }
  return best;
}

inline SymplecticVector hard_decision(const std::vector<LlrVector>& posteriors) {
  SymplecticVector e(posteriors.size());
  for (std::size_t i = 0; i < posteriors.size(); ++i) {
    e.set_pauli(i, hard_decision_single(posteriors[i]));
  }
  return e;
}

// Bipartite adjacency induced by a check matrix in (x|z) layout. An edge
// (j, i) exists iff H_{j,i} or H_{j,n+i} is set; its label is the
// corresponding single-qubit Pauli.
class TannerGraph {
 public:
  explicit TannerGraph(const BinaryMatrix& h) {
    if (h.cols() % 2 != 0) {
      throw std::invalid_argument("TannerGraph: check matrix needs 2n columns");
    }
    n_ = h.cols() / 2;
    m_ = h.rows();
    check_off_.assign(m_ + 1, 0);
    for (std::size_t j = 0; j < m_; ++j) {
      for (std::size_t i = 0; i < n_; ++i) {
        const int x = h.get(j, i);
        const int z = h.get(j, n_ + i);
        if (x | z) {
          edge_var_.push_back(uint32_t(i));
          edge_label_.push_back(uint8_t((x | (z << 1)) - 1));  // 0=X 1=Z 2=Y
        }
      }
      check_off_[j + 1] = uint32_t(edge_var_.size());
    }
    var_off_.assign(n_ + 1, 0);
    for (uint32_t v : edge_var_) ++var_off_[v + 1];
    for (std::size_t i = 0; i < n_; ++i) var_off_[i + 1] += var_off_[i];
    var_edges_.resize(edge_var_.size());
    std::vector<uint32_t> cursor(var_off_.begin(), var_off_.end() - 1);
    for (uint32_t e = 0; e < edge_var_.size(); ++e) {
      var_edges_[cursor[edge_var_[e]]++] = e;
    }
    max_degree_ = 0;
    for (std::size_t j = 0; j < m_; ++j) {
      max_degree_ = std::max(max_degree_,
                             std::size_t(check_off_[j + 1] - check_off_[j]));
    }
  }

  std::size_t num_qubits() const { return n_; }
  std::size_t num_checks() const { return m_; }
  std::size_t num_edges() const { return edge_var_.size(); }
  std::size_t max_check_degree() const { return max_degree_; }

  uint32_t check_begin(std::size_t j) const { return check_off_[j]; }
  uint32_t check_end(std::size_t j) const { return check_off_[j + 1]; }
  uint32_t edge_qubit(std::size_t e) const { return edge_var_[e]; }
  uint8_t edge_label_index(std::size_t e) const { return edge_label_[e]; }
  Pauli edge_label(std::size_t e) const { return Pauli(edge_label_[e] + 1); }

  uint32_t var_begin(std::size_t i) const { return var_off_[i]; }
  uint32_t var_end(std::size_t i) const { return var_off_[i + 1]; }
  uint32_t var_edge(std::size_t idx) const { return var_edges_[idx]; }

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::size_t max_degree_ = 0;
  std::vector<uint32_t> check_off_;
  std::vector<uint32_t> edge_var_;
  std::vector<uint8_t> edge_label_;
  std::vector<uint32_t> var_off_;
  std::vector<uint32_t> var_edges_;
};

// One decoder instance owns its graph and message workspace; reuse it
// across decode calls with the same check matrix. Not thread-safe; give
// each thread its own instance.
class Bp4Decoder {
 public:
  explicit Bp4Decoder(const BinaryMatrix& h)
      : graph_(h), words_(detail::words_for(h.cols())) {
    // Swapped (z|x) packed rows make the per-iteration syndrome check a
    // word-wise AND + popcount.
    const BinaryMatrix swapped = swapped_copy(h);
    row_words_.resize(graph_.num_checks() * words_);
    for (std::size_t j = 0; j < graph_.num_checks(); ++j) {
      const BinaryVector row = swapped.row(j);
      for (std::size_t w = 0; w < words_; ++w) {
        row_words_[j * words_ + w] = row.words()[w];
      }
    }
    msg_.resize(graph_.num_edges());
    lam_.resize(3 * graph_.num_qubits());
    post_.resize(3 * graph_.num_qubits());
    est_words_.resize(words_);
    scratch_t_.resize(graph_.max_check_degree());
    scratch_f_.resize(graph_.max_check_degree());
    scratch_b_.resize(graph_.max_check_degree());
  }

  const TannerGraph& graph() const { return graph_; }

  DecodeResult decode(const BinaryVector& z, const Bp4Config& cfg) {
    validate(cfg);
    if (z.size() != graph_.num_checks()) {
      throw std::invalid_argument("decode: syndrome length != check count");
    }
    const std::size_t n = graph_.num_qubits();
    const double prior = prior_llr(cfg.p0).x;

    std::fill(msg_.begin(), msg_.end(), 0.0);
    std::fill(post_.begin(), post_.end(), prior);
    const detail::QuantBase base0 =
        detail::QuantBase::from_posterior(prior, prior, prior);
    for (std::size_t i = 0; i < n; ++i) {
      lam_[3 * i + 0] = base0.v[0];
      lam_[3 * i + 1] = base0.v[1];
      lam_[3 * i + 2] = base0.v[2];
    }

    // Initial hard decision before iteration 1; with p0 < 0.75 this is the
    // zero estimate and directly settles the z = 0 case.
    write_estimate();
    if (syndrome_matches(z)) return result(true, 1);

    for (int it = 1; it <= cfg.i_max; ++it) {
      if (cfg.schedule == Schedule::flooding) {
        cn_pass(z, cfg.clamp);
        vn_pass(prior);
      } else {
        serial_pass(z, prior, cfg.clamp);
      }
      write_estimate();
      if (syndrome_matches(z)) return result(true, it);
    }
    return result(false, cfg.i_max);
  }

 private:
  static void validate(const Bp4Config& cfg) {
    if (!(cfg.p0 > 0.0 && cfg.p0 < 0.75)) {
      throw std::invalid_argument("Bp4Config: p0 must be in (0, 0.75)");
    }
    if (cfg.i_max < 1) {
      throw std::invalid_argument("Bp4Config: i_max must be >= 1");
    }
    if (!(cfg.clamp > 0.0)) {
      throw std::invalid_argument("Bp4Config: clamp must be positive");
    }
  }

  static BinaryMatrix swapped_copy(const BinaryMatrix& h) {
    const std::size_t n = h.cols() / 2;
    BinaryMatrix out(h.rows(), h.cols());
    for (std::size_t r = 0; r < h.rows(); ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        if (h.get(r, c)) out.set(r, n + c, true);
        if (h.get(r, n + c)) out.set(r, c, true);
      }
    }
    return out;
  }

  void cn_pass(const BinaryVector& z, double clamp) {
    const std::size_t m = graph_.num_checks();
    for (std::size_t j = 0; j < m; ++j) {
      const uint32_t b = graph_.check_begin(j);
      const uint32_t e = graph_.check_end(j);
      const std::size_t deg = e - b;
      if (deg == 0) continue;
      for (std::size_t idx = 0; idx < deg; ++idx) {
        const uint32_t edge = b + uint32_t(idx);
        const double lam =
            lam_[3 * graph_.edge_qubit(edge) + graph_.edge_label_index(edge)];
        const double v = detail::clamp_llr(lam - msg_[edge], clamp);
        scratch_t_[idx] = std::tanh(0.5 * v);
      }
      emit_check_messages(j, deg, z.get(j), clamp);
    }
  }

  void vn_pass(double prior) {
    const std::size_t n = graph_.num_qubits();
    for (std::size_t i = 0; i < n; ++i) {
      double sum_all = 0.0;
      double sum_label[3] = {0.0, 0.0, 0.0};
      for (uint32_t idx = graph_.var_begin(i); idx < graph_.var_end(i); ++idx) {
        const uint32_t e = graph_.var_edge(idx);
        sum_all += msg_[e];
        sum_label[graph_.edge_label_index(e)] += msg_[e];
      }
      const double lx = prior + sum_all - sum_label[0];
      const double lz = prior + sum_all - sum_label[1];
      const double ly = prior + sum_all - sum_label[2];
      post_[3 * i + 0] = lx;
      post_[3 * i + 1] = lz;
      post_[3 * i + 2] = ly;
      const detail::QuantBase q = detail::QuantBase::from_posterior(lx, lz, ly);
      lam_[3 * i + 0] = q.v[0];
      lam_[3 * i + 1] = q.v[1];
      lam_[3 * i + 2] = q.v[2];
    }
  }

  void serial_pass(const BinaryVector& z, double /*prior*/, double clamp) {
    const std::size_t m = graph_.num_checks();
    for (std::size_t j = 0; j < m; ++j) {
      const uint32_t b = graph_.check_begin(j);
      const uint32_t e = graph_.check_end(j);
      const std::size_t deg = e - b;
      if (deg == 0) continue;
      for (std::size_t idx = 0; idx < deg; ++idx) {
        const uint32_t edge = b + uint32_t(idx);
        const double lam =
            lam_[3 * graph_.edge_qubit(edge) + graph_.edge_label_index(edge)];
        const double v = detail::clamp_llr(lam - msg_[edge], clamp);
        scratch_t_[idx] = std::tanh(0.5 * v);
      }
      // Stash old messages, emit new ones, then fold the deltas into the
      // touched qubits so later checks see updated beliefs.
      for (std::size_t idx = 0; idx < deg; ++idx) {
        scratch_f_[idx] = msg_[b + idx];  // reused as old-message buffer
      }
      emit_check_messages(j, deg, z.get(j), clamp);
      for (std::size_t idx = 0; idx < deg; ++idx) {
        const uint32_t edge = b + uint32_t(idx);
        const double delta = msg_[edge] - scratch_f_[idx];
        const uint32_t i = graph_.edge_qubit(edge);
        const uint8_t l = graph_.edge_label_index(edge);
        for (uint8_t c = 0; c < 3; ++c) {
          if (c != l) post_[3 * i + c] += delta;
        }
        const detail::QuantBase q = detail::QuantBase::from_posterior(
            post_[3 * i + 0], post_[3 * i + 1], post_[3 * i + 2]);
        lam_[3 * i + 0] = q.v[0];
        lam_[3 * i + 1] = q.v[1];
        lam_[3 * i + 2] = q.v[2];
      }
    }
  }

  // Writes messages for check j from the tanh values in scratch_t_.
  void emit_check_messages(std::size_t j, std::size_t deg, bool z_bit,
                           double clamp) {
    const uint32_t b = graph_.check_begin(j);
    const double sign = z_bit ? -1.0 : 1.0;
    if (deg == 1) {
      msg_[b] = detail::clamp_llr(sign * 2.0 * std::atanh(1.0), clamp);
      return;
    }
    scratch_b_[deg - 1] = scratch_t_[deg - 1];
    for (std::size_t idx = deg - 1; idx-- > 0;) {
      scratch_b_[idx] = scratch_b_[idx + 1] * scratch_t_[idx];
    }
    double fwd = 1.0;
    for (std::size_t idx = 0; idx < deg; ++idx) {
      const double right = idx + 1 < deg ? scratch_b_[idx + 1] : 1.0;
      msg_[b + idx] =
          detail::clamp_llr(sign * 2.0 * std::atanh(fwd * right), clamp);
      fwd *= scratch_t_[idx];
    }
  }

  void write_estimate() {
    const std::size_t n = graph_.num_qubits();
    std::fill(est_words_.begin(), est_words_.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const LlrVector l{post_[3 * i + 0], post_[3 * i + 1], post_[3 * i + 2]};
      const int code = int(hard_decision_single(l));
      if (code & 1) est_words_[i >> 6] |= uint64_t{1} << (i & 63);
      if (code >> 1) {
        const std::size_t zi = n + i;
        est_words_[zi >> 6] |= uint64_t{1} << (zi & 63);
      }
    }
  }

  bool syndrome_matches(const BinaryVector& z) const {
    for (std::size_t j = 0; j < graph_.num_checks(); ++j) {
      uint64_t acc = 0;
      for (std::size_t w = 0; w < words_; ++w) {
        acc ^= row_words_[j * words_ + w] & est_words_[w];
      }
      if ((std::popcount(acc) & 1) != int(z.get(j))) return false;
    }
    return true;
  }

  DecodeResult result(bool converged, int iterations) const {
    const std::size_t n = graph_.num_qubits();
    BinaryVector bits = BinaryVector::from_words(2 * n, est_words_);
    return {SymplecticVector::from_bits(std::move(bits)), converged, iterations};
  }

  TannerGraph graph_;
  std::size_t words_;
  std::vector<uint64_t> row_words_;  // swapped rows, packed
  std::vector<double> msg_;          // check-to-variable scalar messages
  std::vector<double> lam_;          // per-qubit quantization bases
  std::vector<double> post_;         // per-qubit posterior components
  std::vector<uint64_t> est_words_;  // current hard-decision estimate
  std::vector<double> scratch_t_, scratch_f_, scratch_b_;
};

inline DecodeResult decode(const BinaryMatrix& h, const BinaryVector& z,
                           const Bp4Config& cfg) {
  Bp4Decoder dec(h);
  return dec.decode(z, cfg);
}

}  // namespace qdec
