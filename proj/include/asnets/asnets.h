/* asnets: generalised planning policies over PPDDL domains.
 *
 * C API over the C++ core. All objects are opaque handles owned by the
 * caller and released with the matching *_free. Functions return ASN_OK or
 * an error code, with a message available from asn_last_error(ctx) until the
 * next call on the same context. Strings returned through char** out
 * parameters are heap-allocated; release them with asn_string_free.
 * Handles are not thread-safe; use one context per thread.
 */
#ifndef ASNETS_ASNETS_H
#define ASNETS_ASNETS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct asn_ctx asn_ctx;
typedef struct asn_task asn_task;   /* parsed + grounded problem with network wiring */
typedef struct asn_model asn_model; /* shared weight set for one domain */

enum {
  ASN_OK = 0,
  ASN_ERR_IO = 1,
  ASN_ERR_PARSE = 2,
  ASN_ERR_UNSUPPORTED = 3,
  ASN_ERR_TYPE = 4,
  ASN_ERR_LIMIT = 5,
  ASN_ERR_SHAPE = 6,
  ASN_ERR_INVALID = 7,
  ASN_ERR_VERIFY = 8,
  ASN_ERR_RUNTIME = 9
};

asn_ctx* asn_ctx_new(void);
void asn_ctx_free(asn_ctx* ctx);
const char* asn_last_error(const asn_ctx* ctx);
void asn_string_free(char* s);

/* Built-in generators: ttw | cosanostra | two-chain | two-chain-right | bw | pbw. */
int asn_generate(asn_ctx* ctx, const char* id, int size, uint64_t seed, char** domain_out,
                 char** problem_out);

/* config_json: RunConfig document ("{}" for defaults); unknown keys rejected. */
int asn_task_load(asn_ctx* ctx, const char* domain_path, const char* problem_path,
                  const char* config_json, asn_task** out);
int asn_task_load_text(asn_ctx* ctx, const char* domain_text, const char* problem_text,
                       const char* config_json, asn_task** out);
void asn_task_free(asn_task* task);
int asn_task_report(asn_ctx* ctx, const asn_task* task, char** json_out);
int asn_task_topology(asn_ctx* ctx, const asn_task* task, char** json_out);

int asn_model_init(asn_ctx* ctx, const asn_task* task, uint64_t seed, asn_model** out);
int asn_model_load(asn_ctx* ctx, const char* path, asn_model** out);
int asn_model_save(asn_ctx* ctx, const asn_model* model, const char* path);
void asn_model_free(asn_model* model);

/* state_json: sorted proposition-name array; NULL means the initial state. */
int asn_teach(asn_ctx* ctx, asn_task* task, const char* state_json, char** json_out);
int asn_inspect_heuristic(asn_ctx* ctx, asn_task* task, const char* state_json,
                          char** json_out);

/* Imitation training on one or more tasks of a shared domain. The first
 * task's config drives everything; sparse != 0 switches to the l1 recipe
 * and prunes. log_json_out receives one JSON object per epoch (JSON lines). */
int asn_train(asn_ctx* ctx, asn_task* const* tasks, size_t n_tasks, int sparse,
              char** log_json_out, asn_model** model_out);

int asn_eval(asn_ctx* ctx, const asn_model* model, asn_task* const* tasks, size_t n_tasks,
             char** report_json_out, char** table_out);

int asn_rollout(asn_ctx* ctx, const asn_model* model, asn_task* task, int stochastic,
                uint64_t seed, char** trace_json_out);

int asn_receptive_field(asn_ctx* ctx, const char* config_json, char** grid_json_out,
                        char** table_out);

int asn_export_equations(asn_ctx* ctx, const asn_model* model, const asn_task* task, double tau,
                         char** json_out, char** text_out);

int asn_export_activations(asn_ctx* ctx, const asn_model* model, asn_task* task,
                           uint64_t seed, char** json_out, char** csv_out);

/* domain_id: cosanostra (size = booths) or ttw (size = triangle size).
 * Returns ASN_OK with a report even when verification fails; check the
 * report's "ok" field. */
int asn_verify_sparse(asn_ctx* ctx, const asn_model* model, const char* domain_id, int size,
                      int rollouts, uint64_t seed, char** report_json_out);

#ifdef __cplusplus
}
#endif

#endif /* ASNETS_ASNETS_H */
