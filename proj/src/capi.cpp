#include "hall2p.h"

const char* h2p_version(void) { return "0.1.0"; }
