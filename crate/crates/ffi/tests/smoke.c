#include <stdio.h>
#include <string.h>
#include "laplace.h"

int main(void) {
  LapGraph *g = NULL;
  if (lap_graph_new("z", &g) != LAP_STATUS_OK) return 10;
  LapReport *r = NULL;
  if (lap_solve_on_ball(g, "delta", 1, "0", &r) != LAP_STATUS_OK) return 11;
  if (!lap_report_residual_zero(r)) return 12;
  if (lap_report_len(r) != 3) return 13;
  if (strcmp(lap_report_value(r, 0), "2") != 0) return 14;
  printf("%s\n", lap_report_json(r));
  lap_report_free(r);

  LapGraph *c4 = NULL;
  lap_graph_new("c4", &c4);
  if (lap_solve_on_ball(c4, "delta", 2, "0", &r) != LAP_STATUS_SINGULAR_FINITE) return 15;
  lap_graph_free(c4);
  lap_graph_free(g);
  return 0;
}
