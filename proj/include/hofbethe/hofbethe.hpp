#pragma once

#include "hofbethe/baxter.hpp"
#include "hofbethe/bethe.hpp"
#include "hofbethe/commands.hpp"
#include "hofbethe/curves.hpp"
#include "hofbethe/errors.hpp"
#include "hofbethe/polynomial.hpp"
#include "hofbethe/random.hpp"
#include "hofbethe/transfer.hpp"
#include "hofbethe/weyl.hpp"
