import threading

import numpy as np
import pytest

from easydamas.utils.parallel import chunk_slices, run_chunked


def test_slices_cover_the_range() -> None:
    slices = chunk_slices(10, chunk=4)

    assert slices == [slice(0, 4), slice(4, 8), slice(8, 10)]


def test_bad_chunk_size() -> None:
    with pytest.raises(ValueError):
        chunk_slices(10, chunk=0)


@pytest.mark.parametrize("threads", [1, 3])
def test_every_slice_is_written_once(threads: int) -> None:
    out = np.zeros(1000)
    seen: list[slice] = []
    lock = threading.Lock()

    def fill(part: slice) -> None:
        out[part] += np.arange(part.start, part.stop)
        with lock:
            seen.append(part)

    run_chunked(out.size, fill, threads=threads, chunk=64)

    assert np.array_equal(out, np.arange(1000))
    assert sorted(seen, key=lambda s: s.start) == chunk_slices(1000, chunk=64)
