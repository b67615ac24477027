#pragma once

// Umbrella header: exact arithmetic for unramified normal forms, their
// deformation spaces, stratified unfoldings, and orbit-level machinery.

#include "htl/rational.hpp"
#include "htl/poly.hpp"
#include "htl/matrix.hpp"
#include "htl/partition.hpp"
#include "htl/ring.hpp"
#include "htl/blockalg.hpp"
#include "htl/spectral.hpp"
#include "htl/unfold.hpp"
#include "htl/orbit.hpp"
#include "htl/connection.hpp"
