#ifndef MUCFL_MUCFL_HPP
#define MUCFL_MUCFL_HPP

#include "axioms.hpp"
#include "grammar.hpp"
#include "io.hpp"
#include "language.hpp"
#include "random.hpp"
#include "semantics.hpp"
#include "syntax.hpp"

#endif  // MUCFL_MUCFL_HPP
