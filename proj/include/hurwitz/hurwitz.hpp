#ifndef HURWITZ_HURWITZ_HPP
#define HURWITZ_HURWITZ_HPP

#include "hurwitz/braid.hpp"
#include "hurwitz/classify.hpp"
#include "hurwitz/covers.hpp"
#include "hurwitz/error.hpp"
#include "hurwitz/nielsen.hpp"
#include "hurwitz/perm_group.hpp"
#include "hurwitz/permutation.hpp"

#endif  // HURWITZ_HURWITZ_HPP
