#pragma once

#include <algorithm>
#include <functional>
#include <set>

#include "dualcat/dualcat.hpp"

using dualcat::Error;
using dualcat::ErrorKind;
using dualcat::catcore::FiniteCategory;
using dualcat::catcore::MorIdx;
using dualcat::catcore::ObjIdx;
using dualcat::cmodule::CategoryPtr;
using dualcat::cmodule::CModule;
using dualcat::scomplex::Face;
using dualcat::scomplex::SimplicialComplex;
using dualcat::zlat::FgAbelianGroup;
using dualcat::zlat::GradedGroups;
using dualcat::zlat::IntVector;
