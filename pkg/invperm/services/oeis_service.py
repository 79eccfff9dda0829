"""
OEIS b-file fixtures: parsing, the in-repo fixture store, an opt-in
downloader and the cross-check of computed terms against a fixture.
"""

import os
import re
import time
import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import requests
from dotenv import load_dotenv
from pydantic import BaseModel, field_validator

from invperm.services.catalog import CatalogEntry, OffsetPolicy, entry, entry_for_oeis
from invperm.services.oracle import avoider_sequence
from invperm.services.perm_core import PatternSet
from invperm.services.reports import CountReport, Method, Mismatch
from invperm.services.series_gf import find_offset
from invperm.utils.errors import BfileParseError, FixtureError, MethodUnavailableError, OffsetError

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)

FIXTURE_DIR = Path(os.getenv("INVPERM_FIXTURE_DIR") or Path(__file__).resolve().parent.parent / "fixtures")  # b-file store
OEIS_BASE_URL = os.getenv("OEIS_BASE_URL", "https://oeis.org")
OEIS_TIMEOUT = int(os.getenv("OEIS_TIMEOUT", "30"))  # Timeout for each download in seconds
RETRY_COUNT = int(os.getenv("RETRY_COUNT", "2"))  # Number of retries for failed downloads

_SEQUENCE_ID = re.compile(r"^A\d{6}$")


class OeisFixture(BaseModel):
    sequence_id: Optional[str] = None
    pairs: List[Tuple[int, int]]

    @field_validator("sequence_id")
    @classmethod
    def _check_id(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and not _SEQUENCE_ID.match(value):
            raise ValueError(f"{value!r} is not an OEIS id of the form A000000")
        return value

    @field_validator("pairs")
    @classmethod
    def _check_increasing(cls, value: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
        for (i, _), (j, _) in zip(value, value[1:]):
            if j <= i:
                raise ValueError(f"indices must increase, found {i} then {j}")
        return value

    def values(self) -> Dict[int, int]:
        return dict(self.pairs)

    @property
    def first_index(self) -> Optional[int]:
        return self.pairs[0][0] if self.pairs else None


def parse_bfile(text: str, sequence_id: Optional[str] = None) -> OeisFixture:
    """
    Parse an OEIS b-file: one "index value" pair per line, blank lines and
    lines starting with '#' ignored.

    Raises:
        BfileParseError: on a malformed line or a non-increasing index
    """
    pairs = []
    previous = None
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise BfileParseError(f"expected 'index value', got {line!r}", line_number)
        try:
            index, value = int(fields[0]), int(fields[1])
        except ValueError:
            raise BfileParseError(f"non-integer field in {line!r}", line_number)
        if previous is not None and index <= previous:
            raise BfileParseError(f"index {index} does not increase past {previous}", line_number)
        previous = index
        pairs.append((index, value))
    return OeisFixture(sequence_id=sequence_id, pairs=pairs)


def fixture_path(sequence_id: str) -> Path:
    return FIXTURE_DIR / f"b{sequence_id[1:]}.txt"


def load_fixture(sequence_id: str) -> OeisFixture:
    """
    Read a shipped b-file.

    Raises:
        FixtureError: when the fixture file does not exist
    """
    path = fixture_path(sequence_id)
    if not path.exists():
        logger.error(f"No fixture for {sequence_id} at {path}")
        raise FixtureError(f"missing fixture for {sequence_id} ({path})")
    text = path.read_text()
    if "generated offline" in text.split("\n", 1)[0]:
        logger.warning(f"Fixture {sequence_id} was generated offline, not downloaded; refresh it with --online")
    return parse_bfile(text, sequence_id)


def _store_bfile(sequence_id: str, text: str) -> Path:
    """Write a downloaded b-file into the fixture store."""
    path = fixture_path(sequence_id)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as e:
        logger.error(f"Could not store {sequence_id} at {path}: {str(e)}")
        raise FixtureError(f"could not write fixture for {sequence_id} ({path}): {str(e)}")
    return path


def fetch_bfile(sequence_id: str, retry_count: int = RETRY_COUNT) -> OeisFixture:
    """
    Download a b-file from the OEIS and write it through to the fixture store.

    Args:
        sequence_id: id such as A000041
        retry_count: retries after a failed request, with progressive backoff

    Returns:
        The parsed fixture

    Raises:
        FixtureError: when every attempt fails, or the fixture store is not writable
    """
    url = f"{OEIS_BASE_URL}/{sequence_id}/b{sequence_id[1:]}.txt"
    for attempt in range(retry_count + 1):
        try:
            logger.info(f"Fetching {url} (timeout: {OEIS_TIMEOUT}s, attempt: {attempt+1}/{retry_count+1})")
            response = requests.get(url, timeout=OEIS_TIMEOUT)
            response.raise_for_status()
            # Parse before storing so a malformed download never replaces a fixture
            fixture = parse_bfile(response.text, sequence_id)
            path = _store_bfile(sequence_id, response.text)
            logger.info(f"Stored {len(fixture.pairs)} terms of {sequence_id} at {path}")
            return fixture
        except requests.exceptions.RequestException as e:
            if attempt < retry_count:
                wait_time = (attempt + 1) * 5  # Progressive backoff
                logger.warning(f"Error fetching {sequence_id} (attempt {attempt+1}/{retry_count+1}): {str(e)}. Retrying in {wait_time}s...")
                time.sleep(wait_time)
            else:
                logger.error(f"Failed to fetch {sequence_id} after {retry_count+1} attempts: {str(e)}")
                raise FixtureError(f"could not fetch {sequence_id}: {str(e)}")


def _computed_values(found: CatalogEntry, k_max: int) -> Tuple[str, Dict[int, int]]:
    """Prefer the generating function, then the fast path, then the oracle."""
    if found.gf is not None:
        series = found.gf(k_max + 1)
        return Method.GF.value, dict(enumerate(series.coefficients))
    if found.fast is not None:
        return Method.FAST.value, found.fast(k_max)
    return Method.ORACLE.value, avoider_sequence(found.patterns, k_max).as_dict()


def oeis_check(patterns: Union[PatternSet, str, None] = None, k_max: int = 20, oeis_id: Optional[str] = None, online: bool = False) -> CountReport:
    """
    Compare computed terms with a b-file.

    Aligned entries are compared index by index over the overlap. Pinned
    entries compare the generating function's coefficients under the
    unique shift find_offset reports.

    Args:
        patterns: the pattern set; optional when oeis_id is given
        k_max: largest k to compute
        oeis_id: compare against this id instead of the entry's own
        online: fetch the b-file from the OEIS instead of the fixture store

    Returns:
        CountReport with method, source and offset set; mismatches list every
        disagreeing term
    """
    if isinstance(patterns, str):
        patterns = PatternSet.parse(patterns)
    if patterns is not None:
        found = entry(patterns)
    elif oeis_id is not None:
        found = entry_for_oeis(oeis_id)
    else:
        raise ValueError("oeis_check needs a pattern set or an OEIS id")
    if found is None or (oeis_id or found.oeis_id) is None:
        raise MethodUnavailableError(f"no OEIS entry is catalogued for {patterns or oeis_id}")
    sequence_id = oeis_id or found.oeis_id

    start_time = time.time()
    fixture = fetch_bfile(sequence_id) if online else load_fixture(sequence_id)
    reference = fixture.values()
    method, computed = _computed_values(found, k_max)

    offset = 0
    if found.offset_policy == OffsetPolicy.PINNED:
        pinned = find_offset(computed, reference)
        offset = pinned.offset
    overlap = [k for k in sorted(computed) if offset is not None and k + offset in reference]

    mismatches = []
    if offset is None:
        if not pinned.diff:
            logger.error(f"Offset against {sequence_id} is ambiguous: candidates {pinned.candidates}")
            raise OffsetError(f"no unique shift aligns {found.patterns} with {sequence_id}")
        for k, actual, expected in pinned.diff:
            mismatches.append(Mismatch(k=k, method=method, reference=sequence_id, expected=expected, actual=actual))
    else:
        if not overlap:
            logger.error(f"{sequence_id} shares no index with the computed terms")
            raise FixtureError(f"{sequence_id} has no terms in 0..{k_max}")
        for k in overlap:
            if computed[k] != reference[k + offset]:
                mismatches.append(Mismatch(
                    k=k, method=method, reference=sequence_id, expected=reference[k + offset], actual=computed[k],
                ))
        if len(overlap) < len(computed):
            logger.warning(f"{sequence_id} covers {len(overlap)} of {len(computed)} computed terms")

    elapsed = int((time.time() - start_time) * 1000)
    logger.info(f"OEIS check of {found.patterns} against {sequence_id}: {len(overlap)} terms, {len(mismatches)} mismatches")
    return CountReport.from_values(
        found.patterns.labels(),
        method,
        {k: computed[k] for k in overlap} if offset is not None else computed,
        mismatches=mismatches,
        elapsed_ms=elapsed,
        offset=offset,
        source=f"{'network' if online else 'fixture'}:{sequence_id}",
    )
