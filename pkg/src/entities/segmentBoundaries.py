from dataclasses import dataclass

from ..exceptions import PartitionMismatchError


@dataclass(frozen=True)
class SegmentBoundaries:
    """Interior cut indices of a series of `length` samples.

    Segments are half-open: [0, c_1), [c_1, c_2), ..., [c_m, length).
    """

    cuts: tuple[int, ...]
    length: int

    def __post_init__(self):
        cuts = tuple(int(c) for c in self.cuts)
        object.__setattr__(self, "cuts", cuts)
        object.__setattr__(self, "length", int(self.length))
        if self.length < 1:
            raise PartitionMismatchError(f"length must be positive, got {self.length}")
        previous = 0
        for cut in cuts:
            if cut <= previous or cut >= self.length:
                raise PartitionMismatchError(
                    f"cuts {list(cuts)} are not strictly increasing inside (0, {self.length})"
                )
            previous = cut

    @classmethod
    def from_segments(cls, segments: list[tuple[int, int]]) -> "SegmentBoundaries":
        if not segments:
            raise PartitionMismatchError("no segments")
        ordered = sorted((int(a), int(b)) for a, b in segments)
        if ordered[0][0] != 0:
            raise PartitionMismatchError(f"first segment starts at {ordered[0][0]}, not 0")
        for (start, end), (next_start, _) in zip(ordered, ordered[1:]):
            if end != next_start:
                raise PartitionMismatchError(f"gap or overlap between {end} and {next_start}")
        for start, end in ordered:
            if end <= start:
                raise PartitionMismatchError(f"empty segment [{start}, {end})")
        return cls(cuts=tuple(start for start, _ in ordered[1:]), length=ordered[-1][1])

    @property
    def count(self) -> int:
        return len(self.cuts) + 1

    def segments(self) -> list[tuple[int, int]]:
        edges = (0, *self.cuts, self.length)
        return list(zip(edges[:-1], edges[1:]))

    def segment_lengths(self) -> list[int]:
        return [end - start for start, end in self.segments()]
