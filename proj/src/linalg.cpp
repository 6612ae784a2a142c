#include "tropdeg/linalg.hpp"
