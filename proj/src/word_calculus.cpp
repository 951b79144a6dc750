#include "sigmkt/word_calculus.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

namespace sigmkt {

namespace {

Rational inverse_factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) {
    if (f > (1LL << 62) / i)
      throw std::overflow_error("alpha_coefficient: factorial overflow");
    f *= i;
  }
  return Rational(1, f);
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

namespace {

Rational alpha_unlocked(int r, int k,
                        std::map<std::pair<int, int>, Rational>& cache) {
  if (k > r) return Rational(0);
  const auto key = std::make_pair(r, k);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  Rational value(0);
  if (k == 1) {
    value = inverse_factorial(r + 1);
  } else {
    // split off the first part j >= 1, leaving r - j for k - 1 parts
    for (int j = 1; j + (k - 1) <= r; ++j)
      value += inverse_factorial(j + 1) * alpha_unlocked(r - j, k - 1, cache);
  }
  cache.emplace(key, value);
  return value;
}

}  // namespace

Rational alpha_coefficient(int r, int k) {
  if (r < 1 || k < 1)
    throw std::invalid_argument("alpha_coefficient: r and k must be >= 1");
  static std::map<std::pair<int, int>, Rational> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  return alpha_unlocked(r, k, cache);
}

Rational alpha_sum(int r) {
  if (r < 1) throw std::invalid_argument("alpha_sum: r must be >= 1");
  Rational value(0);
  for (int k = 1; k <= r; ++k) {
    const Rational term = alpha_coefficient(r, k);
    value += (k % 2 == 0) ? term : -term;
  }
  return value;
}

double alpha_value(int r) { return boost::rational_cast<double>(alpha_sum(r)); }

WordCombination tilde_transform(const Word& i, Letter j, int max_moment) {
  if (max_moment < 1)
    throw std::invalid_argument("tilde_transform: max moment letter must be >= 1");
  for (std::size_t p = 0; p < i.size(); ++p) {
    if (i[p] < -1 || i[p] > max_moment)
      throw std::invalid_argument("tilde_transform: word " + i.to_string() +
                                  " has letters outside the moment alphabet");
  }
  if (j < -1 || j > max_moment)
    throw std::invalid_argument("tilde_transform: letter " +
                                std::to_string(j) +
                                " is outside the moment alphabet");
  WordCombination out(i.append(j));
  if (j == brownian_letter && !i.empty() && i.last() == brownian_letter) {
    out.add_term(i.drop_last().append(time_letter), -0.5);
  }
  if (j >= 1) {
    for (std::size_t m = 0; m < i.size(); ++m) {
      const Word tail = i.suffix(m);
      if (!tail.all_letters_positive()) continue;
      const double a = alpha_value(int(tail.size()));
      if (a == 0.0) continue;
      const Letter merged = Letter(tail.letter_sum()) + j;
      if (merged > max_moment)
        throw std::invalid_argument(
            "tilde_transform: resulting letter " + std::to_string(merged) +
            " of word " + i.to_string() + " exceeds the top moment letter " +
            std::to_string(max_moment) + " (bound n d + j <= N violated)");
      out.add_term(i.prefix(m).append(merged), a);
    }
  }
  return out;
}

WordCombination tilde_transform(const WordCombination& c, Letter j,
                                int max_moment) {
  WordCombination out;
  for (const auto& [word, coeff] : c.terms())
    out = add(out, scale(tilde_transform(word, j, max_moment), coeff));
  return out;
}

namespace {

// n and d of a pair of coefficient tables: longest word and largest positive
// letter appearing in either.
std::pair<int, int> table_degree(const WordCombination& w,
                                 const WordCombination& v) {
  int n = 0, d = 0;
  for (const auto* c : {&w, &v}) {
    for (const auto& [word, coeff] : c->terms()) {
      n = std::max(n, int(word.size()));
      d = std::max(d, int(word.max_positive_letter()));
    }
  }
  return {n, d};
}

}  // namespace

SigModelParams::SigModelParams(double s0, WordCombination ell_w,
                               WordCombination ell_nu, int max_moment,
                               int trunc_level)
    : s0_(s0),
      ell_w_(std::move(ell_w)),
      ell_nu_(std::move(ell_nu)),
      max_moment_(max_moment),
      trunc_level_(trunc_level) {
  if (max_moment_ < 1)
    throw std::invalid_argument("SigModelParams: max moment letter must be >= 1");
  if (trunc_level_ < 1)
    throw std::invalid_argument("SigModelParams: truncation level must be >= 1");
  for (const auto* c : {&ell_w_, &ell_nu_}) {
    for (const auto& [word, coeff] : c->terms()) {
      for (std::size_t p = 0; p < word.size(); ++p) {
        if (word[p] < -1 || word[p] > max_moment_)
          throw std::invalid_argument(
              "SigModelParams: coefficient word " + word.to_string() +
              " has letters outside the moment alphabet");
      }
    }
  }
  const auto [n, d] = table_degree(ell_w_, ell_nu_);
  ell_degree_ = n;
  ell_top_letter_ = d;
  if (n * d + 1 > max_moment_)
    throw std::invalid_argument(
        "SigModelParams: bound n d + 1 <= N violated: " + std::to_string(n) +
        "*" + std::to_string(d) + "+1 > " + std::to_string(max_moment_));
}

SigPayoff::SigPayoff(WordCombination terms) : terms_(std::move(terms)) {
  for (const auto& [word, coeff] : terms_.terms()) {
    for (std::size_t p = 0; p < word.size(); ++p) {
      if (word[p] != time_letter && word[p] != 1)
        throw std::invalid_argument("SigPayoff: word " + word.to_string() +
                                    " has letters outside {-1, 1}");
    }
  }
}

WordCombination sig_model_representation(const SigModelParams& params) {
  WordCombination out(Word{}, params.s0());
  out = add(out, tilde_transform(params.ell_w(), brownian_letter,
                                 params.max_moment()));
  out = add(out, tilde_transform(params.ell_nu(), 1, params.max_moment()));
  return out;
}

WordCombination payoff_lift(const Word& payoff_word,
                            const SigModelParams& params) {
  const int m = int(payoff_word.size());
  const int n = params.ell_degree();
  const int d = params.ell_top_letter();
  const int top = params.max_moment();
  for (int p = 0; p < m; ++p) {
    if (payoff_word[p] != time_letter && payoff_word[p] != 1)
      throw std::invalid_argument("payoff_lift: word " +
                                  payoff_word.to_string() +
                                  " has letters outside {-1, 1}");
  }
  if (top < m * (n * d + 1))
    throw std::invalid_argument(
        "payoff_lift: bound N >= m(nd+1) violated: " + std::to_string(top) +
        " < " + std::to_string(m) + "*(" + std::to_string(n) + "*" +
        std::to_string(d) + "+1)");

  const WordCombination& cw = params.ell_w();
  const WordCombination& cnu = params.ell_nu();

  std::vector<WordCombination> u(m + 1);
  u[0] = WordCombination(Word{}, 1.0);
  for (int p = 1; p <= m; ++p) {
    const Letter letter = payoff_word[p - 1];
    if (letter == time_letter) {
      u[p] = tilde_transform(u[p - 1], time_letter, top);
      continue;
    }
    u[p] = add(tilde_transform(shuffle(u[p - 1], cw), brownian_letter, top),
               tilde_transform(shuffle(u[p - 1], cnu), 1, top));
    if (p >= 2 && payoff_word[p - 2] == 1) {
      // quadratic covariation of the Brownian integrals, routed to the clock
      u[p] = add(u[p],
                 tilde_transform(
                     shuffle(u[p - 2], scale(shuffle_power(cw, 2), 0.5)),
                     time_letter, top));
    }
    // simultaneous jump powers over every all-ones suffix of length r >= 2
    for (int r = 2; r <= p && payoff_word[p - r] == 1; ++r) {
      u[p] = add(u[p], tilde_transform(
                           shuffle(u[p - r], scale(shuffle_power(cnu, r),
                                                   1.0 / factorial(r))),
                           r, top));
    }
  }
  return u[m];
}

WordCombination payoff_lift(const SigPayoff& payoff,
                            const SigModelParams& params) {
  WordCombination out;
  for (const auto& [word, coeff] : payoff.terms().terms())
    out = add(out, scale(payoff_lift(word, params), coeff));
  return out;
}

}  // namespace sigmkt
