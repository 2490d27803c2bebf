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

#include "repart/ilp_model.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "repart/errors.hpp"

namespace repart {

int IlpModel::add_var(std::string name, VarType type, Rational lower,
                      std::optional<Rational> upper) {
    if (index_.count(name))
        throw Error("duplicate variable name " + name);
    int idx = static_cast<int>(vars.size());
    index_[name] = idx;
    vars.push_back(IlpVar{std::move(name), type, lower, std::move(upper)});
    return idx;
}

int IlpModel::var_index(const std::string &name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

void IlpModel::add_constraint(IlpConstraint c) {
    for (auto &[idx, coeff] : c.terms) {
        (void)coeff;
        if (idx < 0 || idx >= static_cast<int>(vars.size()))
            throw Error("constraint references undeclared variable");
    }
    constraints.push_back(std::move(c));
}

int IlpModel::count_kind(const std::string &kind) const {
    int n = 0;
    for (const auto &c : constraints)
        if (c.kind == kind)
            ++n;
    return n;
}

namespace {

long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

// Renders ` coeff name` / ` + coeff name` / ` - coeff name`.
void put_term(std::ostream &out, bool first, long long coeff, const std::string &name) {
    out << (coeff >= 0 ? (first ? " " : " + ") : (first ? " - " : " - "));
    out << std::abs(coeff) << ' ' << name;
}

} // namespace

void emit_lp(const IlpModel &model, std::ostream &out) {
    out << "\\ generated by repart\n";
    out << "Minimize\n obj:";
    bool first = true;
    std::vector<std::string> inexact_notes;
    for (const auto &[idx, coeff] : model.objective) {
        if (coeff == Rational(0))
            continue;
        bool exact = true;
        std::string dec = format_decimal(coeff < Rational(0) ? -coeff : coeff, &exact);
        if (!exact)
            inexact_notes.push_back(model.vars[idx].name + " coefficient is exactly " +
                                    format_rational(coeff));
        out << (coeff < Rational(0) ? " - " : (first ? " " : " + ")) << dec << ' '
            << model.vars[idx].name;
        first = false;
    }
    if (model.objective_constant != Rational(0) || first) {
        bool exact = true;
        Rational c = model.objective_constant;
        std::string dec = format_decimal(c < Rational(0) ? -c : c, &exact);
        if (!exact)
            inexact_notes.push_back("objective constant is exactly " + format_rational(c));
        out << (c < Rational(0) ? " - " : (first ? " " : " + ")) << dec;
    }
    out << '\n';
    for (const auto &note : inexact_notes)
        out << "\\ " << note << '\n';

    out << "Subject To\n";
    for (const auto &c : model.constraints) {
        // scale to integer coefficients: multiply by the lcm of denominators
        long long mult = c.rhs.denominator();
        for (const auto &[idx, coeff] : c.terms) {
            (void)idx;
            mult = lcm_ll(mult, coeff.denominator());
        }
        out << ' ' << c.name << ':';
        if (mult != 1)
            out << " \\ scaled by " << mult << '\n' << ' ';
        bool cfirst = true;
        for (const auto &[idx, coeff] : c.terms) {
            Rational scaled = coeff * Rational(mult);
            put_term(out, cfirst, scaled.numerator(), model.vars[idx].name);
            cfirst = false;
        }
        Rational rhs = c.rhs * Rational(mult);
        out << (c.sense == Sense::Le ? " <= " : c.sense == Sense::Ge ? " >= " : " = ")
            << rhs.numerator() << '\n';
    }

    out << "Bounds\n";
    for (const auto &v : model.vars) {
        if (v.type == VarType::Binary)
            continue;
        out << ' ' << format_decimal(v.lower) << " <= " << v.name;
        if (v.upper)
            out << " <= " << format_decimal(*v.upper);
        out << '\n';
    }

    bool any_bin = false, any_int = false;
    for (const auto &v : model.vars) {
        any_bin |= v.type == VarType::Binary;
        any_int |= v.type == VarType::Integer;
    }
    if (any_bin) {
        out << "Binaries\n";
        for (const auto &v : model.vars)
            if (v.type == VarType::Binary)
                out << ' ' << v.name << '\n';
    }
    if (any_int) {
        out << "Generals\n";
        for (const auto &v : model.vars)
            if (v.type == VarType::Integer)
                out << ' ' << v.name << '\n';
    }
    out << "End\n";
}

void emit_lp_file(const IlpModel &model, const std::string &path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    emit_lp(model, out);
    if (!out)
        throw IoError("write failure on " + path);
}

IlpSolution parse_solution(std::istream &in, const IlpModel &model) {
    IlpSolution sol;
    sol.values.assign(model.vars.size(), Rational(0));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string word, value;
            if (ls >> word >> value && word == "status") {
                if (value == "optimal")
                    sol.status = SolutionStatus::Optimal;
                else if (value == "feasible")
                    sol.status = SolutionStatus::Feasible;
                else if (value == "infeasible")
                    sol.status = SolutionStatus::Infeasible;
                else
                    sol.status = SolutionStatus::Unknown;
            }
            continue;
        }
        std::istringstream ls(line);
        std::string name, value;
        if (!(ls >> name >> value))
            throw ParseError("solution line " + std::to_string(lineno) +
                             ": expected `variable value`");
        int idx = model.var_index(name);
        if (idx < 0)
            throw ParseError("solution line " + std::to_string(lineno) + ": unknown variable " +
                             name);
        Rational v;
        try {
            v = parse_rational(value);
        } catch (const std::invalid_argument &ex) {
            throw ParseError("solution line " + std::to_string(lineno) + ": " + ex.what());
        }
        if (model.vars[idx].type == VarType::Binary) {
            // binaries within 1e-6 of an integer round; anything else is rejected
            Rational rounded = v >= Rational(1, 2) ? Rational(1) : Rational(0);
            Rational resid = v - rounded;
            if (resid < Rational(0))
                resid = -resid;
            if (resid > Rational(1, 1000000))
                throw ParseError("solution line " + std::to_string(lineno) + ": variable " + name +
                                 " has non-binary value " + value);
            v = rounded;
        }
        sol.values[idx] = v;
    }
    sol.objective = eval_objective(model, sol.values);
    return sol;
}

IlpSolution parse_solution_file(const std::string &path, const IlpModel &model) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);
    return parse_solution(in, model);
}

void write_solution(std::ostream &out, const IlpModel &model, const IlpSolution &sol) {
    switch (sol.status) {
    case SolutionStatus::Optimal:
        out << "# status optimal\n";
        break;
    case SolutionStatus::Feasible:
        out << "# status feasible\n";
        break;
    case SolutionStatus::Infeasible:
        out << "# status infeasible\n";
        break;
    case SolutionStatus::Unknown:
        out << "# status unknown\n";
        break;
    }
    for (size_t i = 0; i < sol.values.size(); ++i)
        if (sol.values[i] != Rational(0))
            out << model.vars[i].name << ' ' << format_rational(sol.values[i]) << '\n';
}

Rational eval_objective(const IlpModel &model, const std::vector<Rational> &values) {
    Rational obj = model.objective_constant;
    for (const auto &[idx, coeff] : model.objective)
        obj += coeff * values[idx];
    return obj;
}

bool check_feasible(const IlpModel &model, const std::vector<Rational> &values) {
    for (const auto &c : model.constraints) {
        Rational lhs(0);
        for (const auto &[idx, coeff] : c.terms)
            lhs += coeff * values[idx];
        if (c.sense == Sense::Le && lhs > c.rhs)
            return false;
        if (c.sense == Sense::Ge && lhs < c.rhs)
            return false;
        if (c.sense == Sense::Eq && lhs != c.rhs)
            return false;
    }
    return true;
}

} // namespace repart
