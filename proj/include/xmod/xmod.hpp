#pragma once

#include "xmod/error.hpp"
#include "xmod/integer.hpp"
#include "xmod/groupoid.hpp"
#include "xmod/generators.hpp"
#include "xmod/nerve.hpp"
#include "xmod/crossed_module.hpp"
#include "xmod/matrix.hpp"
#include "xmod/smith.hpp"
#include "xmod/cochain.hpp"
#include "xmod/transgression.hpp"
#include "xmod/cohomology.hpp"
#include "xmod/format.hpp"
#include "xmod/verify.hpp"
#include "xmod/commands.hpp"
