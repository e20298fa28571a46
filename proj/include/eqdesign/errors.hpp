/*
 * Copyright 2026 the eqdesign authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef EQDESIGN_ERRORS_HPP
#define EQDESIGN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eqdesign {

/** Base class for all errors raised by the library. */
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/** Malformed input text (game document or formula); carries a position. */
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/** Well-formed input that violates a model invariant (missing transition,
 *  undefined state, empty action set, unknown proposition, ...). */
class SemanticError : public Error {
public:
    explicit SemanticError(const std::string& what) : Error(what) {}
};

/** A configured cap was exceeded.  Distinct from a definitive "no". */
class ResourceLimitError : public Error {
public:
    explicit ResourceLimitError(const std::string& what) : Error(what) {}
};

} // namespace eqdesign

#endif
