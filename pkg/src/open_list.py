import heapq
import itertools

from src.costs import lex_key

class OpenList:
    """
    Priority queue of search labels keyed by (f lexicographically, arrival time, insertion order).

    Labels must expose `f`, `t_r` and a writable `in_open` attribute. Removal is
    lazy: a removed label stays in the heap but is skipped when popped.
    """

    def __init__(self, order="lex"):
        lex_key((0,), order)
        self.order = order
        self._heap = []
        self._counter = itertools.count()
        self._size = 0

    def __len__(self):
        return self._size

    def __bool__(self):
        return self._size > 0

    def __iter__(self):
        return (entry[-1] for entry in self._heap if entry[-1].in_open)

    def push(self, label):
        label.in_open = True
        heapq.heappush(self._heap, (lex_key(label.f, self.order), label.t_r, next(self._counter), label))
        self._size += 1

    def pop(self):
        while self._heap:
            label = heapq.heappop(self._heap)[-1]
            if label.in_open:
                label.in_open = False
                self._size -= 1
                return label
        return None

    def remove(self, label):
        if label.in_open:
            label.in_open = False
            self._size -= 1

    def remove_if(self, predicate):
        """Remove every queued label for which predicate(label) is true; returns the count."""
        removed = 0
        for entry in self._heap:
            label = entry[-1]
            if label.in_open and predicate(label):
                self.remove(label)
                removed += 1
        if removed and len(self._heap) > 4 * max(self._size, 1):
            self._heap = [entry for entry in self._heap if entry[-1].in_open]
            heapq.heapify(self._heap)
        return removed
