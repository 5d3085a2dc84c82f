#pragma once

#include "penrose_ctqw/ctqw.hpp"
#include "penrose_ctqw/error.hpp"
#include "penrose_ctqw/hamiltonian.hpp"
#include "penrose_ctqw/io.hpp"
#include "penrose_ctqw/lattice.hpp"
#include "penrose_ctqw/select.hpp"
#include "penrose_ctqw/spectral.hpp"
#include "penrose_ctqw/transport.hpp"
