#ifndef SUBIOTA_SUBIOTA_HPP
#define SUBIOTA_SUBIOTA_HPP

#include "subiota/audit.hpp"
#include "subiota/base.hpp"
#include "subiota/build.hpp"
#include "subiota/check.hpp"
#include "subiota/cli.hpp"
#include "subiota/convert.hpp"
#include "subiota/derivation.hpp"
#include "subiota/enumerate.hpp"
#include "subiota/errors.hpp"
#include "subiota/expand.hpp"
#include "subiota/formula.hpp"
#include "subiota/io.hpp"
#include "subiota/parse.hpp"
#include "subiota/print.hpp"
#include "subiota/subformula.hpp"

#endif
