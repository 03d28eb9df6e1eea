#pragma once

// Reduced idiotypic immune network for behavior arbitration.
//
// Behaviors are modeled as antibodies, environmental conditions as antigens.
// A learned paratope matrix P holds antibody-to-antigen match strengths; a
// fixed idiotope matrix I marks antibody-antigen combinations an antibody
// disallows in its peers. Each control tick the best-matching antibody
// (alpha) is found from the presenting antigens, inter-antibody suppression
// and stimulation reshape a per-antibody concentration vector, and the
// antibody with the highest normalized concentration (beta) is selected for
// execution. Concentrations integrate past activity, so beta can disagree
// with alpha; that disagreement is the idiotypic difference.

#include <Eigen/Dense>

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace idionet::immune {

using Matrix = Eigen::MatrixXd;  // rows: antibodies, cols: antigens
using Vector = Eigen::VectorXd;  // one entry per antibody

inline constexpr int kAntibodies = 16;
inline constexpr int kAntigens = 8;

// Antigen weighting: the dominant antigen counts double-strength (but only
// for antibodies that actually match it); every other presenting antigen
// contributes a flat background weight.
inline constexpr double kDominantWeight = 2.0;
inline constexpr double kPresentingWeight = 0.25;

struct Config {
  double b = 80.0;    // concentration growth rate
  double k1 = 0.65;   // suppression weight relative to stimulation
  double k2 = 0.05;   // per-tick concentration death rate
  int antibody_count = kAntibodies;
  int antigen_count = kAntigens;

  void validate() const {
    if (!(b > 0.0)) throw std::invalid_argument("immune config: b must be > 0");
    if (!(k1 >= 0.0 && k1 <= 1.0))
      throw std::invalid_argument("immune config: k1 must be in [0, 1]");
    if (!(k2 > 0.0 && k2 < 1.0))
      throw std::invalid_argument("immune config: k2 must be in (0, 1)");
    if (antibody_count <= 0 || antigen_count <= 0)
      throw std::invalid_argument("immune config: matrix dimensions must be positive");
  }
};

// Per-antibody antigen weight array for one tick.
struct AntigenReport {
  std::vector<int> presenting;  // sorted, unique
  int dominant = -1;
  Matrix weights;               // antibody x antigen
};

inline AntigenReport build_antigen_array(std::vector<int> presenting, int dominant,
                                         const Matrix& paratope) {
  if (presenting.empty())
    throw std::invalid_argument("antigen array: empty presenting set");
  std::sort(presenting.begin(), presenting.end());
  presenting.erase(std::unique(presenting.begin(), presenting.end()),
                   presenting.end());
  const auto rows = paratope.rows();
  const auto cols = paratope.cols();
  bool dominant_present = false;
  for (int j : presenting) {
    if (j < 0 || j >= cols)
      throw std::invalid_argument("antigen array: antigen index out of range");
    dominant_present |= (j == dominant);
  }
  if (!dominant_present)
    throw std::invalid_argument("antigen array: dominant antigen not presenting");

  Matrix weights = Matrix::Zero(rows, cols);
  for (int j : presenting) {
    if (j == dominant) {
      for (Eigen::Index i = 0; i < rows; ++i)
        weights(i, j) = paratope(i, j) > 0.0 ? kDominantWeight : 0.0;
    } else {
      weights.col(j).setConstant(kPresentingWeight);
    }
  }
  return {std::move(presenting), dominant, std::move(weights)};
}

// 1.0 for antibodies holding a positive match to at least one presenting
// antigen; only these take part in suppression/stimulation exchange.
inline Vector competing(const Matrix& paratope, const std::vector<int>& presenting) {
  Vector h = Vector::Zero(paratope.rows());
  for (Eigen::Index i = 0; i < paratope.rows(); ++i)
    for (int j : presenting)
      if (paratope(i, j) > 0.0) {
        h(i) = 1.0;
        break;
      }
  return h;
}

inline int lowest_argmax(const Vector& v) {
  int best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (v(i) > v(best)) best = static_cast<int>(i);
  return best;
}

struct BestMatch {
  int alpha = 0;
  Vector strength;  // per-antibody match strength against the antigen array
};

inline BestMatch compute_alpha(const Matrix& paratope, const AntigenReport& report) {
  Vector s1 = paratope.cwiseProduct(report.weights).rowwise().sum();
  return {lowest_argmax(s1), std::move(s1)};
}

// How strongly each antibody is suppressed: overlap of its idiotope with the
// winner's paratope, gated to competing antibodies and weighted by both clone
// concentrations.
inline Vector compute_suppression(const Matrix& paratope, const Matrix& idiotope,
                                  const Vector& competing_mask,
                                  const Vector& concentration, int alpha) {
  Vector overlap = idiotope * paratope.row(alpha).transpose();
  return overlap.cwiseProduct(competing_mask).cwiseProduct(concentration) *
         concentration(alpha);
}

// How strongly each antibody is stimulated: where the winner's idiotope marks
// an antigen the antibody itself matches weakly, the mismatch (1 - P) drives
// encouragement to dissent.
inline Vector compute_stimulation(const Matrix& paratope, const Matrix& idiotope,
                                  const Vector& competing_mask,
                                  const Vector& concentration, int alpha) {
  Matrix mismatch = Matrix::Ones(paratope.rows(), paratope.cols()) - paratope;
  Vector drive = mismatch * idiotope.row(alpha).transpose();
  return drive.cwiseProduct(competing_mask).cwiseProduct(concentration) *
         concentration(alpha);
}

inline Vector compute_global_strength(const Vector& s1, const Vector& s2,
                                      const Vector& s3, double k1) {
  return s1 - k1 * s2 + s3;
}

// Raw concentrations persist across ticks and integrate global strength; the
// normalized copy (sum 1) is what beta selection and the next tick's
// suppression/stimulation consume.
struct Concentrations {
  Vector raw;
  Vector normalized;

  static Concentrations initial(int n) {
    Vector raw = Vector::Ones(n);
    return {raw, raw / raw.sum()};
  }
};

struct ConcentrationStep {
  Concentrations next;
  bool reset_applied = false;
};

inline ConcentrationStep update_concentrations(const Concentrations& prev,
                                               const Vector& global_strength,
                                               const Config& cfg) {
  Vector raw =
      prev.raw + cfg.b * global_strength - cfg.k2 * prev.raw;
  raw = raw.cwiseMax(0.0);
  bool reset = raw.maxCoeff() <= 0.0;
  if (reset) raw.setConstant(1.0);
  Vector normalized = raw / raw.sum();
  return {{std::move(raw), std::move(normalized)}, reset};
}

inline int select_beta(const Vector& normalized) { return lowest_argmax(normalized); }

struct TickOutcome {
  int alpha = 0;
  int beta = 0;
  Vector strength;     // S1
  Vector suppression;  // S2
  Vector stimulation;  // S3
  Vector global;       // Sg
  bool idiotypic_difference = false;
  bool concentration_reset = false;
};

// Stateful driver owning the concentration vector. The paratope is passed in
// each tick because reinforcement updates it between ticks.
class Network {
 public:
  Network(Config cfg, Matrix idiotope)
      : cfg_(cfg),
        idiotope_(std::move(idiotope)),
        conc_(Concentrations::initial(cfg.antibody_count)) {
    cfg_.validate();
    if (idiotope_.rows() != cfg_.antibody_count ||
        idiotope_.cols() != cfg_.antigen_count)
      throw std::invalid_argument("immune network: idiotope dimensions mismatch");
  }

  TickOutcome tick(const Matrix& paratope, const std::vector<int>& presenting,
                   int dominant) {
    auto report = build_antigen_array(presenting, dominant, paratope);
    Vector h = competing(paratope, report.presenting);
    auto best = compute_alpha(paratope, report);
    Vector s2 = compute_suppression(paratope, idiotope_, h, conc_.normalized,
                                    best.alpha);
    Vector s3 = compute_stimulation(paratope, idiotope_, h, conc_.normalized,
                                    best.alpha);
    Vector sg = compute_global_strength(best.strength, s2, s3, cfg_.k1);
    auto step = update_concentrations(conc_, sg, cfg_);
    conc_ = step.next;
    if (step.reset_applied) ++reset_events_;
    int beta = select_beta(conc_.normalized);
    return {best.alpha,       beta,
            std::move(best.strength), std::move(s2),
            std::move(s3),    std::move(sg),
            best.alpha != beta, step.reset_applied};
  }

  const Concentrations& concentrations() const { return conc_; }
  const Matrix& idiotope() const { return idiotope_; }
  const Config& config() const { return cfg_; }
  int reset_events() const { return reset_events_; }

 private:
  Config cfg_;
  Matrix idiotope_;
  Concentrations conc_;
  int reset_events_ = 0;
};

}  // namespace idionet::immune
