"""In-memory engine for the SIGMOD 2014 Programming Contest queries over LDBC social network dumps."""

from .ingest import SocialNetwork, assemble, load_directory
from .queries import Query1, Query2, Query3, Query4, evaluate, query1, query2, query3, query4

__all__ = [
    "Query1",
    "Query2",
    "Query3",
    "Query4",
    "SocialNetwork",
    "assemble",
    "evaluate",
    "load_directory",
    "query1",
    "query2",
    "query3",
    "query4",
]
