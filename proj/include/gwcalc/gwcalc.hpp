#pragma once

#include "calculus_towers.hpp"
#include "cofibre_filtration.hpp"
#include "combinatorics.hpp"
#include "error.hpp"
#include "json_io.hpp"
#include "k_euler.hpp"
#include "lie_words.hpp"
#include "modular.hpp"
#include "partition_homology.hpp"
#include "stable_complex.hpp"
