#ifndef SIGMKT_PATH_HPP
#define SIGMKT_PATH_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "sigmkt/word.hpp"

namespace sigmkt {

// A cadlag sample path stored as ordered nodes with linear motion between
// them. A jump is encoded as a pair of nodes sharing one time: the transition
// into the flagged second node is instantaneous, and the first node of the
// pair carries the left limit. Node 0 is never flagged, at most two nodes
// share a time, and times are otherwise strictly increasing. If the time
// letter -1 is a component, its values must equal clock time at every node.
class CadlagSamplePath {
public:
  CadlagSamplePath() = default;
  CadlagSamplePath(Alphabet alphabet, std::vector<double> times,
                   std::vector<std::vector<double>> values,
                   std::vector<bool> jump_flags);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t dimension() const { return alphabet_.size(); }
  std::size_t node_count() const { return times_.size(); }
  double horizon() const { return times_.empty() ? 0.0 : times_.back(); }

  double time(std::size_t node) const { return times_[node]; }
  bool is_jump(std::size_t node) const { return jump_flags_[node]; }
  const std::vector<double>& value(std::size_t node) const {
    return values_[node];
  }
  double value(std::size_t node, Letter l) const {
    return values_[node][alphabet_.axis_of(l)];
  }

  // Increment vector of the transition into node (node >= 1).
  std::vector<double> increment(std::size_t node) const;

  // Right-continuous evaluation at an arbitrary time in [0, horizon].
  std::vector<double> value_at(double t) const;

  // time,jump,c<letter>,... rows; loads re-validate every invariant.
  static CadlagSamplePath read_csv(std::istream& in);
  static CadlagSamplePath read_csv_file(const std::string& filename);
  void write_csv(std::ostream& out) const;
  void write_csv_file(const std::string& filename) const;

private:
  void validate() const;

  Alphabet alphabet_;
  std::vector<double> times_;
  std::vector<std::vector<double>> values_;
  std::vector<bool> jump_flags_;
};

// Convenience builder that appends nodes and validates on finish.
class PathBuilder {
public:
  PathBuilder(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}
  void add_node(double t, std::vector<double> value, bool jump = false);
  CadlagSamplePath finish();

private:
  Alphabet alphabet_;
  std::vector<double> times_;
  std::vector<std::vector<double>> values_;
  std::vector<bool> jump_flags_;
};

}  // namespace sigmkt

#endif
