"""Enumerated groups and their class partitions, kept in a Django cache.

Entries are keyed by a hash of the Cartan matrix and CODE_VERSION, so a
change to either never reads a stale partition.
"""
import hashlib
import json
import logging
import time

from django.core.cache import caches
from django.core.cache.backends.filebased import FileBasedCache

from weyl_torus.weyl_group import (
    Group,
    enumerate_group,
    partition_into_classes,
)

logger = logging.getLogger(__name__)

CODE_VERSION = "1"
CACHE_ALIAS = "weyl_group"


def cache_key(rs):
    content = json.dumps(
        {"cartan": rs.cartan.tolist(), "version": CODE_VERSION},
        sort_keys=True,
    )
    return "weyl-group-" + hashlib.sha256(content.encode()).hexdigest()


def get_cache(path=None):
    if path is None:
        return caches[CACHE_ALIAS]
    return FileBasedCache(str(path), {"TIMEOUT": None})


def load_group(rs, path=None, refresh=False):
    """The enumerated and partitioned group of `rs`, from the cache when
    present.
    """
    cache = get_cache(path)
    key = cache_key(rs)
    payload = None if refresh else cache.get(key)
    if payload is not None and payload.get("rank") == rs.rank:
        logger.info("group cache hit for %s (%s)", rs.name, key[-12:])
        return Group.from_payload(rs, payload)

    logger.info("group cache miss for %s, enumerating", rs.name)
    started = time.perf_counter()
    group = enumerate_group(rs)
    partition_into_classes(group)
    logger.info(
        "W(%s) built in %.2fs", rs.name, time.perf_counter() - started
    )
    cache.set(key, group.to_payload(), None)
    return group
