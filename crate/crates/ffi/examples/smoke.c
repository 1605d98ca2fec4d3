#include <stdio.h>
#include <string.h>

#include "diffusion_auction.h"

static const char *GRAPH =
    "{\"seller\":\"s\",\"nodes\":[{\"id\":\"A\",\"value\":\"7\"},{\"id\":\"B\",\"value\":\"4\"}],"
    "\"edges\":[{\"from\":\"s\",\"to\":\"A\",\"weight\":\"0\"},{\"from\":\"s\",\"to\":\"B\",\"weight\":\"0\"}]}";

int main(void) {
    DaGraph *graph = NULL;
    DaOutcome *outcome = NULL;
    char *winner = NULL;
    int64_t num = 0, den = 0;

    if (da_graph_from_json(GRAPH, &graph) != DA_STATUS_OK) {
        fprintf(stderr, "%s\n", da_last_error());
        return 1;
    }
    if (da_run(graph, "wdm", &outcome) != DA_STATUS_OK) {
        fprintf(stderr, "%s\n", da_last_error());
        return 1;
    }
    if (da_outcome_revenue(outcome, &num, &den) != DA_STATUS_OK || num != 4 || den != 1) {
        return 2;
    }
    if (da_outcome_winner(outcome, &winner) != DA_STATUS_OK || strcmp(winner, "A") != 0) {
        return 3;
    }
    printf("winner %s revenue %lld\n", winner, (long long)num);
    da_string_free(winner);
    da_outcome_free(outcome);
    da_graph_free(graph);
    return 0;
}
