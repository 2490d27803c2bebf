/*
Copyright 2026 the repart authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "repart/rational.hpp"

namespace repart {

enum class VarType { Binary, Integer, Continuous };

struct IlpVar {
    std::string name;
    VarType type = VarType::Binary;
    Rational lower{0};
    std::optional<Rational> upper; // absent = +inf
};

enum class Sense { Le, Ge, Eq };

/// One linear constraint: sum of coeff * var `sense` rhs.
/// `kind` tags the constraint family (cover, balance, pin, pin-pair, ...)
/// so tests and the tiny solver can group them.
struct IlpConstraint {
    std::string name;
    std::vector<std::pair<int, Rational>> terms;
    Sense sense = Sense::Le;
    Rational rhs{0};
    std::string kind;
};

/// Solver-neutral linear model with exact rational coefficients.
struct IlpModel {
    std::vector<IlpVar> vars;
    std::vector<IlpConstraint> constraints;
    std::vector<std::pair<int, Rational>> objective; // minimized
    Rational objective_constant{0};

    int add_var(std::string name, VarType type = VarType::Binary, Rational lower = Rational(0),
                std::optional<Rational> upper = std::nullopt);
    int var_index(const std::string &name) const; // -1 if unknown
    void add_constraint(IlpConstraint c);

    int count_kind(const std::string &kind) const;

  private:
    std::unordered_map<std::string, int> index_;
};

enum class SolutionStatus { Optimal, Feasible, Infeasible, Unknown };

struct IlpSolution {
    std::vector<Rational> values; // by var index
    Rational objective{0};
    SolutionStatus status = SolutionStatus::Unknown;
};

/// CPLEX-LP text: Minimize / Subject To / Bounds / Binaries (/ Generals) /
/// End. Constraints are scaled to integer coefficients (exact for any
/// rational input); objective coefficients are decimal, with the exact
/// fraction noted in a comment when the decimal form would round.
void emit_lp(const IlpModel &model, std::ostream &out);
void emit_lp_file(const IlpModel &model, const std::string &path);

/// `variable value` per line; '#' starts a comment; a comment of the form
/// `# status <optimal|feasible|infeasible|unknown>` sets the status.
/// Unlisted variables default to 0. Binary values are rounded; a residual
/// above 1e-6 raises Error ("NonBinaryValue"). Unknown names raise Error.
IlpSolution parse_solution(std::istream &in, const IlpModel &model);
IlpSolution parse_solution_file(const std::string &path, const IlpModel &model);

/// Writes a solution in the same `variable value` format (used for
/// warm-start files). Zero entries are omitted.
void write_solution(std::ostream &out, const IlpModel &model, const IlpSolution &sol);

/// Recomputes the objective of an assignment against the model.
Rational eval_objective(const IlpModel &model, const std::vector<Rational> &values);

/// True if every constraint holds exactly for the assignment.
bool check_feasible(const IlpModel &model, const std::vector<Rational> &values);

} // namespace repart
