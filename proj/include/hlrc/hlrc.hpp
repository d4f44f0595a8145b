#pragma once

#include "hlrc/error.hpp"
#include "hlrc/galois.hpp"
#include "hlrc/linalg.hpp"
#include "hlrc/poly.hpp"
#include "hlrc/curves.hpp"
#include "hlrc/singleton.hpp"
#include "hlrc/bounds.hpp"
#include "hlrc/construct.hpp"
#include "hlrc/decode.hpp"
#include "hlrc/verify.hpp"
#include "hlrc/descriptor.hpp"
