#include "gibbscut/denoise.hpp"

#include <algorithm>
#include <string>

#include "gibbscut/error.hpp"
#include "gibbscut/graphcut.hpp"

namespace gibbscut {

DataTerm parse_data_term(std::string_view name) {
  if (name == "absolute") return DataTerm::Absolute;
  if (name == "quadratic") return DataTerm::Quadratic;
  throw InvalidInput("unknown data term '" + std::string(name) + "'");
}

int quantize(int value, int max_value, int k) {
  if (value < 0 || value > max_value) throw InvalidInput("pixel value out of range");
  return static_cast<int>(static_cast<long>(value) * (k + 1) / (static_cast<long>(max_value) + 1));
}

std::vector<Rational> smoothness_table(int k, bool quadratic) {
  std::vector<Rational> g;
  for (int d = 0; d <= k; ++d) g.emplace_back(quadratic ? d * d : d);
  return g;
}

EnergyModel model_from_image(const ImageBuffer& image, int k, DataTerm data,
                             std::vector<Rational> g, Rational lambda) {
  if (image.pixels.size() != image.width * image.height || image.pixels.empty())
    throw InvalidInput("image buffer is empty or inconsistent");
  OrderedDomain domain = OrderedDomain::uniform(image.max_value, k);
  EnergyModel m;
  m.width = image.width;
  m.height = image.height;
  m.k = k;
  m.domain.assign(domain.values().begin(), domain.values().end());
  m.g = std::move(g);
  m.lambda = std::move(lambda);
  m.unary.reserve(image.pixels.size());
  for (int p : image.pixels) {
    const Rational& observed = domain[static_cast<std::size_t>(quantize(p, image.max_value, k))];
    std::vector<Rational> costs;
    for (int l = 0; l <= k; ++l) {
      Rational diff = domain[static_cast<std::size_t>(l)] - observed;
      costs.push_back(data == DataTerm::Absolute ? Rational(abs(diff)) : Rational(diff * diff));
    }
    m.unary.push_back(std::move(costs));
  }
  validate(m);
  return m;
}

DenoiseResult denoise(const ImageBuffer& input, const DenoiseOptions& options) {
  if (options.k < 1 || options.k > 15) throw InvalidInput("denoising supports 2..16 levels");
  EnergyModel model = model_from_image(input, options.k, options.data,
                                       smoothness_table(options.k, options.quadratic_smoothness),
                                       options.lambda);
  EnergyExpansion ex = expand_energy_model(model);

  DenoiseResult out;
  MinimizerReport report;
  switch (options.method) {
    case SolveMethod::Brute:
      report = brute_minimize(ex.polynomial, options.msfm.caps);
      break;
    case SolveMethod::Cut:
      report = minimize_via_cut(ex.polynomial);
      break;
    case SolveMethod::Auto:
      report = minimize_auto(ex.polynomial, options.msfm.caps);
      break;
    case SolveMethod::Msfm: {
      MsfmConfig cfg = options.msfm;
      cfg.strategy = PartitionStrategy::GridTiles;
      cfg.grid = GridShape{model.width, model.height, static_cast<std::size_t>(model.k)};
      MsfmResult r = msfm_minimize(ex.polynomial, cfg);
      report = std::move(r.report);
      out.trace = std::move(r.trace);
      break;
    }
  }
  out.labels = decode_levels(report.minimal, ex.map);
  out.energy = model.energy(out.labels);
  if (out.energy != report.min_value)
    throw VerificationFailure("decoded labeling energy differs from the polynomial minimum");
  out.image = ImageBuffer{input.width, input.height, input.max_value, {}};
  for (Label l : out.labels)
    out.image.pixels.push_back(static_cast<int>(model.domain[static_cast<std::size_t>(l)].get_num().get_si()));
  return out;
}

ExhaustiveResult exhaustive_minimize(const EnergyModel& m) {
  validate(m);
  const std::size_t base = static_cast<std::size_t>(m.k) + 1;
  std::size_t states = 1;
  for (std::size_t x = 0; x < m.width; ++x) {
    states *= base;
    if (states > 1024) throw Infeasible("row too wide for exhaustive enumeration");
  }
  auto digits = [&](std::size_t s) {
    std::vector<Label> row(m.width);
    for (std::size_t x = 0; x < m.width; ++x) {
      row[x] = static_cast<Label>(s % base);
      s /= base;
    }
    return row;
  };
  std::vector<std::vector<Label>> rows(states);
  for (std::size_t s = 0; s < states; ++s) rows[s] = digits(s);

  auto pair_cost = [&](Label a, Label b) { return m.lambda * m.g[static_cast<std::size_t>(std::abs(a - b))]; };
  std::vector<Rational> transition(states * states);
  for (std::size_t s = 0; s < states; ++s)
    for (std::size_t t = 0; t < states; ++t) {
      Rational c = 0;
      for (std::size_t x = 0; x < m.width; ++x) c += pair_cost(rows[s][x], rows[t][x]);
      transition[s * states + t] = c;
    }
  auto row_cost = [&](std::size_t y, std::size_t s) {
    Rational c = 0;
    for (std::size_t x = 0; x < m.width; ++x) {
      c += m.unary[m.site(x, y)][static_cast<std::size_t>(rows[s][x])];
      if (x + 1 < m.width) c += pair_cost(rows[s][x], rows[s][x + 1]);
    }
    return c;
  };

  const std::size_t h = m.height;
  std::vector<std::vector<Rational>> local(h, std::vector<Rational>(states));
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t s = 0; s < states; ++s) local[y][s] = row_cost(y, s);

  // forward[y][s]: best energy of rows 0..y with row y in state s.
  // backward[y][s]: best energy of rows y+1..h-1 given row y in state s.
  std::vector<std::vector<Rational>> forward(h, std::vector<Rational>(states));
  std::vector<std::vector<Rational>> backward(h, std::vector<Rational>(states, 0));
  forward[0] = local[0];
  for (std::size_t y = 1; y < h; ++y)
    for (std::size_t t = 0; t < states; ++t) {
      Rational best = forward[y - 1][0] + transition[t];
      for (std::size_t s = 1; s < states; ++s) {
        Rational c = forward[y - 1][s] + transition[s * states + t];
        if (c < best) best = c;
      }
      forward[y][t] = best + local[y][t];
    }
  for (std::size_t y = h - 1; y-- > 0;)
    for (std::size_t s = 0; s < states; ++s) {
      Rational best = transition[s * states] + local[y + 1][0] + backward[y + 1][0];
      for (std::size_t t = 1; t < states; ++t) {
        Rational c = transition[s * states + t] + local[y + 1][t] + backward[y + 1][t];
        if (c < best) best = c;
      }
      backward[y][s] = best;
    }

  ExhaustiveResult r;
  r.energy = forward[h - 1][0];
  for (std::size_t s = 1; s < states; ++s)
    if (forward[h - 1][s] < r.energy) r.energy = forward[h - 1][s];
  r.minimal.assign(m.sites(), m.k + 1);
  r.maximal.assign(m.sites(), -1);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t s = 0; s < states; ++s) {
      if (forward[y][s] + backward[y][s] != r.energy) continue;
      for (std::size_t x = 0; x < m.width; ++x) {
        auto& lo = r.minimal[m.site(x, y)];
        auto& hi = r.maximal[m.site(x, y)];
        lo = std::min(lo, rows[s][x]);
        hi = std::max(hi, rows[s][x]);
      }
    }
  return r;
}

}  // namespace gibbscut
