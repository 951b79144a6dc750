#include "sigmkt/path.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sigmkt {

CadlagSamplePath::CadlagSamplePath(Alphabet alphabet, std::vector<double> times,
                                   std::vector<std::vector<double>> values,
                                   std::vector<bool> jump_flags)
    : alphabet_(std::move(alphabet)),
      times_(std::move(times)),
      values_(std::move(values)),
      jump_flags_(std::move(jump_flags)) {
  validate();
}

void CadlagSamplePath::validate() const {
  if (times_.empty()) throw std::invalid_argument("path needs at least one node");
  if (values_.size() != times_.size() || jump_flags_.size() != times_.size())
    throw std::invalid_argument("path arrays have mismatched lengths");
  if (jump_flags_[0]) throw std::invalid_argument("node 0 cannot be a jump node");
  for (const auto& v : values_)
    if (v.size() != alphabet_.size())
      throw std::invalid_argument("path node dimension does not match alphabet");
  for (std::size_t k = 1; k < times_.size(); ++k) {
    if (jump_flags_[k]) {
      if (times_[k] != times_[k - 1])
        throw std::invalid_argument("jump node must repeat the previous time");
      if (k >= 2 && jump_flags_[k - 1])
        throw std::invalid_argument("more than two nodes share one time");
    } else if (!(times_[k] > times_[k - 1])) {
      throw std::invalid_argument("times must be strictly increasing between "
                                  "non-jump nodes");
    }
  }
  if (alphabet_.contains(time_letter)) {
    const std::size_t axis = alphabet_.axis_of(time_letter);
    for (std::size_t k = 0; k < times_.size(); ++k)
      if (values_[k][axis] != times_[k])
        throw std::invalid_argument(
            "time component must equal clock time at every node");
  }
}

std::vector<double> CadlagSamplePath::increment(std::size_t node) const {
  if (node == 0 || node >= times_.size())
    throw std::out_of_range("increment needs 1 <= node < node_count");
  std::vector<double> out(values_[node]);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= values_[node - 1][i];
  return out;
}

std::vector<double> CadlagSamplePath::value_at(double t) const {
  if (t < times_.front() || t > times_.back())
    throw std::out_of_range("time outside the path horizon");
  // Rightmost node with time <= t gives the cadlag value; interpolate inside
  // a linear segment.
  std::size_t hi = std::upper_bound(times_.begin(), times_.end(), t) - times_.begin();
  if (hi == times_.size()) return values_.back();
  std::size_t lo = hi - 1;
  if (times_[lo] == t) return values_[lo];
  const double w = (t - times_[lo]) / (times_[hi] - times_[lo]);
  std::vector<double> out(values_[lo]);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] += w * (values_[hi][i] - out[i]);
  return out;
}

void PathBuilder::add_node(double t, std::vector<double> value, bool jump) {
  times_.push_back(t);
  values_.push_back(std::move(value));
  jump_flags_.push_back(jump);
}

CadlagSamplePath PathBuilder::finish() {
  return CadlagSamplePath(alphabet_, std::move(times_), std::move(values_),
                          std::move(jump_flags_));
}

void CadlagSamplePath::write_csv(std::ostream& out) const {
  out << "time,jump";
  for (Letter l : alphabet_.letters()) out << ",c" << l;
  out << "\n";
  char buf[32];
  for (std::size_t k = 0; k < times_.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", times_[k]);
    out << buf << ',' << (jump_flags_[k] ? 1 : 0);
    for (double v : values_[k]) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << ',' << buf;
    }
    out << "\n";
  }
}

void CadlagSamplePath::write_csv_file(const std::string& filename) const {
  std::ofstream out(filename);
  if (!out) throw std::runtime_error("cannot open " + filename + " for writing");
  write_csv(out);
}

CadlagSamplePath CadlagSamplePath::read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("path csv is empty");
  std::vector<Letter> letters;
  {
    std::stringstream header(line);
    std::string cell;
    if (!std::getline(header, cell, ',') || cell != "time")
      throw std::invalid_argument("path csv must start with a time column");
    if (!std::getline(header, cell, ',') || cell != "jump")
      throw std::invalid_argument("path csv needs a jump column second");
    while (std::getline(header, cell, ',')) {
      if (cell.size() < 2 || cell[0] != 'c')
        throw std::invalid_argument("path csv component column '" + cell +
                                    "' must look like c<letter>");
      letters.push_back(std::stoi(cell.substr(1)));
    }
  }
  if (letters.empty())
    throw std::invalid_argument("path csv needs at least one component column");
  std::vector<double> times;
  std::vector<std::vector<double>> values;
  std::vector<bool> jumps;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    if (!std::getline(row, cell, ','))
      throw std::invalid_argument("short path csv row: " + line);
    times.push_back(std::stod(cell));
    if (!std::getline(row, cell, ','))
      throw std::invalid_argument("short path csv row: " + line);
    if (cell != "0" && cell != "1")
      throw std::invalid_argument("jump flag must be 0 or 1, got " + cell);
    jumps.push_back(cell == "1");
    std::vector<double> v;
    while (std::getline(row, cell, ',')) v.push_back(std::stod(cell));
    if (v.size() != letters.size())
      throw std::invalid_argument("path csv row has wrong arity: " + line);
    values.push_back(std::move(v));
  }
  return CadlagSamplePath(Alphabet(letters), std::move(times), std::move(values),
                          std::move(jumps));
}

CadlagSamplePath CadlagSamplePath::read_csv_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw std::runtime_error("cannot open " + filename);
  return read_csv(in);
}

}  // namespace sigmkt
