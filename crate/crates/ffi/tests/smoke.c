/* SPDX-License-Identifier: Apache-2.0 */
#include <math.h>
#include <stdio.h>

#include "gam.h"

#define CHECK(cond)                                                        \
  do {                                                                     \
    if (!(cond)) {                                                         \
      fprintf(stderr, "line %d: %s (%s)\n", __LINE__, #cond,               \
              gam_last_error() ? gam_last_error() : "no error");           \
      return 1;                                                            \
    }                                                                      \
  } while (0)

int main(void) {
  const uint32_t edges[] = {0, 1, 1, 2};
  const uint32_t classes[] = {0, 0, 1};
  GamDiscreteGraph *g = NULL;
  GamLabels *l = NULL;
  GamWeightedGraph *w = NULL;
  GamSummary s;
  double per[3];
  double ccns[4];
  size_t c = 0;
  double d = 0.0;

  CHECK(gam_discrete_graph_new(3, edges, 2, &g) == GAM_STATUS_OK);
  CHECK(gam_labels_classes(classes, 3, 0, &l) == GAM_STATUS_OK);
  CHECK(gam_homophily(g, l, 1, NULL, 0, &s, per, 3) == GAM_STATUS_OK);
  CHECK(s.mean == 0.5 && s.num_excluded == 0);
  CHECK(per[0] == 1.0 && per[1] == 0.5 && per[2] == 0.0);
  CHECK(gam_ccns(g, l, 1, NULL, 0, true, ccns, 4, &c, &d) == GAM_STATUS_OK);
  CHECK(c == 2 && d >= 0.0);

  CHECK(gam_weighted_graph_from_discrete(g, 1.0, &w) == GAM_STATUS_OK);
  CHECK(gam_continuous_homophily(w, l, NULL, 0, &s, NULL, 0) == GAM_STATUS_OK);
  CHECK(fabs(s.mean - 0.5) < 1e-15);

  CHECK(gam_homophily(NULL, l, 1, NULL, 0, &s, NULL, 0) == GAM_STATUS_NULL_POINTER);
  CHECK(gam_last_error() != NULL);

  gam_weighted_graph_free(w);
  gam_labels_free(l);
  gam_discrete_graph_free(g);
  printf("ok %s\n", gam_version());
  return 0;
}
