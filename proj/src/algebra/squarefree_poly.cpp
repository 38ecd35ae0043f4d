#include "sfpa/squarefree_poly.h"

namespace sfpa {

template class SquarefreePoly<double>;
template class SquarefreePoly<Rational>;

}  // namespace sfpa
