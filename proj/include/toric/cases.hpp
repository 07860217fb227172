#pragma once

// The two published binomials for the 4x4x4 and 6x4x3 tables, in the TeX
// form they were typeset in (line breaks and display delimiters included).

namespace toric::cases {

inline constexpr const char* kTable444Binomial = R"(x_{1 1 1}^2 x_{1 3 3} x_{1 4 4} x_{2 2 3} x_{2 2 
          4} x_{2 3 2} x_{2 4 2} x_{3 1 3} x_{3 2 2} x_{3 
          4 1} x_{4 1 4} x_{4 2 2} x_{4 3 1} \\
$$
$$-    x_{1 1 3} x_{1 1 4} x_{1 3 1} x_{1 4 
          1} x_{2 2 2}^2 x_{2 3 3} x_{2 4 4} x_{3 1 
          1} x_{3 2 3} x_{3 4 2} x_{4 1 1} x_{4 2 4} x_{4 
          3 2},)";

inline constexpr const char* kTable643Binomial = R"(x_{111} x_{221} x_{331} x_{641} x_{212} x_{522} x_{432} x_{642} x_{413} x_{323} x_{633}^2 x_{143} x_{543}
$$
$$
-
x_{211} x_{321} x_{631} x_{141} x_{412} x_{222} x_{632} x_{542} x_{113} x_{523} x_{333} x_{433} x_{643}^2.)";

}  // namespace toric::cases
