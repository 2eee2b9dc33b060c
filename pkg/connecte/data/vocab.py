"""
connecte.data.vocab

Dense, insertion-ordered vocabularies of surface strings
"""

from connecte.exceptions import DataError, TsvParseError, VocabularyError
from connecte.utils import LoggerMixin


class Vocab(LoggerMixin):
    """
    Bijection between surface strings and contiguous ids 0..n-1

    Ids are assigned in order of first appearance, so loading the same files in the same
    order always yields the same ids.
    """

    def __init__(self, kind, names=()):
        self.kind = kind
        self.names = []
        self.index = {}
        for name in names:
            self.add(name)

    def __len__(self):
        return len(self.names)

    def __contains__(self, name):
        return name in self.index

    def __iter__(self):
        return iter(self.names)

    def __eq__(self, other):
        if not isinstance(other, Vocab):
            return False
        return self.kind == other.kind and self.names == other.names

    def __repr__(self):
        return f"<Vocab kind={self.kind} size={len(self)}>"

    def add(self, name):
        """Return the id of ``name``, appending it first if it is new"""
        idx = self.index.get(name)
        if idx is None:
            idx = len(self.names)
            self.names.append(name)
            self.index[name] = idx
        return idx

    def encode(self, name, grow=False):
        """
        Resolve a surface form to its id

        Args:
            name: surface string
            grow: append unseen names instead of failing
        Raises:
            VocabularyError if ``name`` is unseen and ``grow`` is not set
        """
        if grow:
            return self.add(name)
        try:
            return self.index[name]
        except KeyError:
            raise VocabularyError(name, self.kind, self.prefix_matches(name))

    def decode(self, idx):
        return self.names[idx]

    def copy(self):
        return Vocab(self.kind, self.names)

    def prefix_matches(self, name, limit=5):
        """
        Return up to ``limit`` vocabulary names sharing the longest possible exact prefix
        with ``name``, in sorted order. Empty when not even the first character matches.
        """
        for cut in range(len(name), 0, -1):
            prefix = name[:cut]
            matches = sorted(n for n in self.names if n.startswith(prefix))
            if matches:
                return matches[:limit]
        return []

    def dump(self, path):
        """Write the vocabulary as ``id<TAB>surface`` lines"""
        with open(path, "w", encoding="utf-8") as handle:
            for idx, name in enumerate(self.names):
                handle.write(f"{idx}\t{name}\n")

    @classmethod
    def load(cls, path, kind):
        """
        Read a vocabulary written by ``dump``

        Raises:
            TsvParseError for lines that are not ``id<TAB>surface``
            DataError if ids are not contiguous from 0 or a surface form repeats
        """
        vocab = cls(kind)
        with open(path, encoding="utf-8") as handle:
            for number, raw in enumerate(handle, start=1):
                line = raw.rstrip("\n").rstrip("\r")
                if not line:
                    continue
                fields = line.split("\t")
                if len(fields) != 2 or not fields[0].isdigit():
                    raise TsvParseError(path, number, 2, len(fields))
                idx, name = int(fields[0]), fields[1]
                if idx != len(vocab) or name in vocab:
                    raise DataError(
                        f"{path}:{number}: {kind} vocabulary ids must be contiguous and unique"
                    )
                vocab.add(name)
        vocab.logger.debug("Loaded %d %s names from %s", len(vocab), kind, path)
        return vocab
