#pragma once

#include "core/net/network.hpp"

namespace asnets::dom {

// Hand-written compact reference policies for the built-in domains, shipped
// as checkpoint fixtures and used by verify-sparse and the test suite.

// Eight nonzero weights; follows the outside edge of the triangle by scoring
// moves onto spare-equipped locations that are adjacent to further spares.
net::ParameterStore ttw_sparse_store();

// Pays each toll booth once on the way out, none on the way back; relies on
// action counts and the open/paid flags.
net::ParameterStore cn_sparse_store();

}  // namespace asnets::dom
