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

#include <stdexcept>
#include <string>

namespace repart {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A directed cycle was found; the message names one node on the cycle.
struct CycleError : Error {
    explicit CycleError(int node)
        : Error("cycle detected through node " + std::to_string(node)), node(node) {}
    int node;
};

struct IndexError : Error {
    using Error::Error;
};

struct UncoveredNodeError : Error {
    explicit UncoveredNodeError(int node)
        : Error("node " + std::to_string(node) + " is assigned to no processor"), node(node) {}
    int node;
};

/// Instance exceeds the configured exhaustive-search budget.
struct TooLargeError : Error {
    using Error::Error;
};

struct InfeasibleError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace repart
