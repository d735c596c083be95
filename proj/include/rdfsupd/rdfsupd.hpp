#pragma once

#include "rdfsupd/errors.hpp"
#include "rdfsupd/model.hpp"
#include "rdfsupd/pattern.hpp"
#include "rdfsupd/lexer.hpp"
#include "rdfsupd/turtle.hpp"
#include "rdfsupd/sparql.hpp"
#include "rdfsupd/entailment.hpp"
#include "rdfsupd/rewrite.hpp"
#include "rdfsupd/query.hpp"
#include "rdfsupd/update.hpp"
