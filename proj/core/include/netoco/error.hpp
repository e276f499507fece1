#pragma once

#include <stdexcept>
#include <string>

namespace netoco {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidGraph : public Error {
 public:
  using Error::Error;
};

class InvalidVertex : public Error {
 public:
  explicit InvalidVertex(int v);
  int vertex() const { return vertex_; }

 private:
  int vertex_;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotStronglyConvex : public Error {
 public:
  using Error::Error;
};

class NotSmooth : public Error {
 public:
  using Error::Error;
};

class NegativeCost : public Error {
 public:
  using Error::Error;
};

class InstanceInfeasible : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class SolverDiverged : public Error {
 public:
  explicit SolverDiverged(const std::string& what, int t = -1, int v = -1);
  SolverDiverged tagged(int t, int v) const;
  int time() const { return t_; }
  int vertex() const { return v_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  int t_;
  int v_;
};

class DegenerateOptimum : public Error {
 public:
  using Error::Error;
};

class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

class DistanceTooSmall : public Error {
 public:
  DistanceTooSmall(int i, int j, int distance);
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace netoco
