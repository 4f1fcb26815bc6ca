"""Identity catalog, verification engine and command-line interface."""

from .catalog import IdentityEntry, catalog, lookup, named_series
from .verify import product_match_search, run_all, verify, verify_entry

__all__ = ["IdentityEntry", "catalog", "lookup", "named_series", "product_match_search", "run_all",
           "verify", "verify_entry"]
