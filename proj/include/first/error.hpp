/*
* Copyright (C) 2026 The FIRST-MCS Authors
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
#ifndef FIRST_ERROR_HPP
#define FIRST_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace first
{

/// Base class of every data error raised by the library. The CLI maps these to exit code 2.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A raster handed to LEA contains no pixel darker than the threshold.
class AllWhiteMap : public Error
{
public:
    AllWhiteMap()
        : Error("AllWhiteMap: raster has no black pixels inside the sensing area")
    {
    }
};

/// No in-bounds samples were available to build an empirical distribution.
class EmptyTrace : public Error
{
public:
    EmptyTrace()
        : Error("EmptyTrace: no in-bounds samples")
    {
    }
};

class EmptyTraceSet : public Error
{
public:
    EmptyTraceSet()
        : Error("EmptyTraceSet: trace file contains no in-bounds points")
    {
    }
};

class EmptyWindow : public Error
{
public:
    EmptyWindow()
        : Error("EmptyWindow: majority vote over an empty report window")
    {
    }
};

/// Malformed input file. Carries the 1-based line number when one applies (0 otherwise).
class ParseError : public Error
{
public:
    ParseError(std::size_t line, const std::string& reason)
        : Error("ParseError" + (line > 0 ? " at line " + std::to_string(line) : std::string{}) + ": " + reason)
        , m_line(line)
    {
    }

    std::size_t line() const
    {
        return m_line;
    }

private:
    std::size_t m_line;
};

class ConfigError : public Error
{
public:
    explicit ConfigError(const std::string& reason)
        : Error("ConfigError: " + reason)
    {
    }
};

/// A distribution or model argument violates its invariants.
class InvalidArgument : public Error
{
public:
    explicit InvalidArgument(const std::string& reason)
        : Error("InvalidArgument: " + reason)
    {
    }
};

} // namespace first

#endif // FIRST_ERROR_HPP
