#pragma once

#include <keiso/battery.hpp>
#include <keiso/digraph.hpp>
#include <keiso/error.hpp>
#include <keiso/folding.hpp>
#include <keiso/groups.hpp>
#include <keiso/io.hpp>
#include <keiso/isomorphism.hpp>
#include <keiso/magma.hpp>
