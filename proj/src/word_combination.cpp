#include "sigmkt/word_combination.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace sigmkt {

WordCombination::WordCombination(const Word& w, double coeff) {
  add_term(w, coeff);
}

void WordCombination::add_term(const Word& w, double coeff) {
  if (coeff == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(w, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double WordCombination::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? 0.0 : it->second;
}

std::size_t WordCombination::max_word_length() const {
  std::size_t m = 0;
  for (const auto& [w, c] : terms_) m = std::max(m, w.size());
  return m;
}

std::string WordCombination::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  char buf[64];
  for (const auto& [w, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::snprintf(buf, sizeof buf, "%.17g", c);
    out += buf;
    out += '*';
    out += w.to_string();
  }
  return out;
}

WordCombination WordCombination::parse(const std::string& text) {
  WordCombination out;
  if (text == "0" || text.empty()) return out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t sep = text.find(" + ", pos);
    std::string term =
        text.substr(pos, sep == std::string::npos ? sep : sep - pos);
    std::size_t star = term.find('*');
    if (star == std::string::npos)
      throw std::invalid_argument("combination term '" + term +
                                  "' lacks a coeff*word separator");
    std::size_t parsed = 0;
    double c = std::stod(term.substr(0, star), &parsed);
    if (parsed != star)
      throw std::invalid_argument("combination coefficient '" +
                                  term.substr(0, star) + "' is not a number");
    out.add_term(Word::parse(term.substr(star + 1)), c);
    if (sep == std::string::npos) break;
    pos = sep + 3;
  }
  return out;
}

WordCombination add(const WordCombination& a, const WordCombination& b) {
  WordCombination out = a;
  for (const auto& [w, c] : b.terms()) out.add_term(w, c);
  return out;
}

WordCombination scale(const WordCombination& a, double s) {
  WordCombination out;
  if (s == 0.0) return out;
  for (const auto& [w, c] : a.terms()) out.add_term(w, c * s);
  return out;
}

WordCombination append_letter(const WordCombination& a, Letter j) {
  WordCombination out;
  for (const auto& [w, c] : a.terms()) out.add_term(w.append(j), c);
  return out;
}

WordCombination word_shuffle(const Word& a, const Word& b) {
  if (a.empty()) return WordCombination(b);
  if (b.empty()) return WordCombination(a);
  WordCombination out;
  const WordCombination left = word_shuffle(a.drop_last(), b);
  for (const auto& [w, c] : left.terms()) out.add_term(w.append(a.last()), c);
  const WordCombination right = word_shuffle(a, b.drop_last());
  for (const auto& [w, c] : right.terms()) out.add_term(w.append(b.last()), c);
  return out;
}

WordCombination shuffle(const WordCombination& a, const WordCombination& b) {
  WordCombination out;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      const WordCombination mix = word_shuffle(wa, wb);
      const double c = ca * cb;
      for (const auto& [w, cw] : mix.terms()) out.add_term(w, c * cw);
    }
  return out;
}

WordCombination shuffle_power(const WordCombination& a, int k) {
  if (k < 0) throw std::invalid_argument("shuffle_power needs k >= 0");
  WordCombination out(Word{});
  for (int i = 0; i < k; ++i) out = shuffle(out, a);
  return out;
}

double eval(const WordCombination& a, const TensorElement& t) {
  double sum = 0.0;
  for (const auto& [w, c] : a.terms()) sum += c * t.coeff(w);
  return sum;
}

double max_coeff_delta(const WordCombination& a, const WordCombination& b) {
  double m = 0.0;
  for (const auto& [w, c] : a.terms()) m = std::max(m, std::abs(c - b.coeff(w)));
  for (const auto& [w, c] : b.terms()) m = std::max(m, std::abs(c - a.coeff(w)));
  return m;
}

bool is_group_like(const TensorElement& a, double tol) {
  if (std::abs(a.scalar() - 1.0) > tol) return false;
  const std::vector<Word> words = a.alphabet().words_up_to(a.level());
  for (const Word& wi : words)
    for (const Word& wj : words) {
      if (wi.size() + wj.size() > static_cast<std::size_t>(a.level())) continue;
      if (wi.empty() || wj.empty()) continue;
      const double split = a.coeff(wi) * a.coeff(wj);
      const double joint = eval(word_shuffle(wi, wj), a);
      if (std::abs(split - joint) > tol * std::max(1.0, std::abs(joint)))
        return false;
    }
  return true;
}

}  // namespace sigmkt
