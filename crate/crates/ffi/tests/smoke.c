#include <stdio.h>
#include "dea.h"

static const char *pareto_name(DeaParetoLabel l) {
  switch (l) {
  case DEA_PARETO_LABEL_E: return "E";
  case DEA_PARETO_LABEL_EPRIME: return "E'";
  case DEA_PARETO_LABEL_WEP: return "WEP";
  case DEA_PARETO_LABEL_NEP: return "NEP";
  }
  return "?";
}

int main(void) {
  const double x[16] = {0, 1, 2, 1, 0, 2, 0, 1.5, 0, 4, 2, 1, 4, 4, 4, 4};
  const double y[8] = {1, 2, 2, 1.5, 1, 1, 2, 1};
  DeaDataset *ds = NULL;
  DeaClassification *c = NULL;
  if (dea_dataset_new(8, 2, 1, x, y, &ds) != DEA_STATUS_OK ||
      dea_classify(ds, DEA_METHOD_UNIFIED, NULL, &c) != DEA_STATUS_OK) {
    fprintf(stderr, "%s\n", dea_last_error_message());
    return 1;
  }
  for (size_t i = 0; i < dea_classification_len(c); i++) {
    DeaUnitLabels labels;
    dea_classification_get(c, i, &labels);
    printf(i ? " %s" : "%s", pareto_name(labels.pareto));
  }
  printf("\n");
  dea_classification_free(c);
  dea_dataset_free(ds);
  return 0;
}
