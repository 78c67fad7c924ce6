#pragma once

#include "orbitcat/cache.hpp"
#include "orbitcat/cartan.hpp"
#include "orbitcat/derived.hpp"
#include "orbitcat/dot.hpp"
#include "orbitcat/errors.hpp"
#include "orbitcat/functor_word.hpp"
#include "orbitcat/matrix.hpp"
#include "orbitcat/mesh.hpp"
#include "orbitcat/orbit.hpp"
#include "orbitcat/quiver.hpp"
#include "orbitcat/rational.hpp"
#include "orbitcat/rep.hpp"
