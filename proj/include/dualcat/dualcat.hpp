#pragma once

#include "dualcat/error.hpp"
#include "dualcat/zlat.hpp"
#include "dualcat/catcore.hpp"
#include "dualcat/cmodule.hpp"
#include "dualcat/scomplex.hpp"
#include "dualcat/dualcert.hpp"
#include "dualcat/zoo.hpp"
#include "dualcat/io.hpp"
