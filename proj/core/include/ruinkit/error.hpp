/*
   Copyright 2026 The ruinkit Authors

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

namespace ruinkit {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter or argument is outside its documented domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Root bracket endpoints do not straddle a sign change.
class NoSignChange : public Error {
public:
    using Error::Error;
};

class MaxIterExceeded : public Error {
public:
    using Error::Error;
};

/// The tail-decay probe of the semi-infinite quadrature rejected the integrand.
class Divergent : public Error {
public:
    using Error::Error;
};

class NetProfitViolated : public InvalidArgument {
public:
    NetProfitViolated() : InvalidArgument("net profit condition violated: need c > lambda * mu") {}
};

/// Neither the Cramer nor the heavy-tailed regime applies to the model.
class RegimeUnavailable : public Error {
public:
    using Error::Error;
};

class DegenerateP0 : public Error {
public:
    DegenerateP0() : Error("p0 >= 1: modified survival probability is undefined") {}
};

/// Mechanism state does not belong to the mechanism it is used with.
class InvalidState : public Error {
public:
    using Error::Error;
};

class ZeroDenominator : public Error {
public:
    using Error::Error;
};

}  // namespace ruinkit
