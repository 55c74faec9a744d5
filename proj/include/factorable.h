#ifndef FACTORABLE_H
#define FACTORABLE_H

/* C interface to the factorable-monoid library. All text results are
   heap strings owned by the caller and released with fm_string_free. */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct fm_monoid fm_monoid;

typedef enum {
  FM_OK = 0,
  FM_ERR_SEMANTIC = 1,       /* valid input, failed check or impossible request */
  FM_ERR_PARSE = 2,          /* malformed spec document or word */
  FM_ERR_INVALID_ARG = 3,    /* null pointer, bad number */
  FM_ERR_NOT_APPLICABLE = 4, /* command does not fit the monoid kind */
  FM_ERR_INTERNAL = 5
} fm_status;

typedef enum {
  FM_REWRITE_IRREDUCIBLE = 0,
  FM_REWRITE_CYCLE = 1,
  FM_REWRITE_BUDGET = 2
} fm_rewrite_outcome;

/* Message of the last failed call on this thread ("" if none). */
const char* fm_last_error(void);
void fm_string_free(char* s);

/* `path` may also be "fixture:NAME" for a registered fixture. */
fm_status fm_load_file(const char* path, fm_monoid** out);
fm_status fm_load_json(const char* json_text, fm_monoid** out);
fm_status fm_load_fixture(const char* name, fm_monoid** out);
void fm_monoid_free(fm_monoid* m);

fm_status fm_kind(const fm_monoid* m, char** out);
fm_status fm_export(const fm_monoid* m, char** out);

/* Runs the checks that apply to the monoid kind; *passed is 1 iff all pass. */
fm_status fm_check(const fm_monoid* m, int radius, char** report, int* passed);
fm_status fm_normal_form(const fm_monoid* m, const char* word, char** out);
/* strategy: "rightmost", "leftmost" or "schedule:3,2,1,..." */
fm_status fm_rewrite(const fm_monoid* m, const char* word, const char* strategy, long budget,
                     int trace, char** out, int* outcome);
fm_status fm_homology(const fm_monoid* m, int max_degree, char** out);
fm_status fm_lambda(int n, char** out);

fm_status fm_garside_nf(const fm_monoid* m, const char* word, char** out);
/* Letters or simple names, inverses written with a "^-1" suffix. */
fm_status fm_garside_group_nf(const fm_monoid* m, const char* word, char** out);
fm_status fm_garside_structure(const fm_monoid* m, char** out);
fm_status fm_garside_qf(const fm_monoid* m, char** out);

fm_status fm_fixtures_list(char** out);
fm_status fm_fixture_export(const char* name, char** out);

#ifdef __cplusplus
}
#endif

#endif
