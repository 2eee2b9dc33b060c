"""
connecte.model.checkpoint

Checkpoint directory layout:

    manifest.json                 format version, dims, vocabulary sizes, config echo
    vocab_{entity,relation,type}.tsv
    {E,T,R_star,R_circ,M}.bin     24-byte header (magic "CONEMAT1", rows and cols as
                                  little-endian uint64) then row-major little-endian float32

Matrices are stored in single precision and loaded back as float64.
"""

import hashlib
import logging
import os
import struct
from collections import namedtuple

import numpy as np
from packaging.version import InvalidVersion, Version

from connecte.const import (
    CHECKPOINT_FORMAT_VERSION,
    MANIFEST_FILE,
    MATRIX_FILE,
    MATRIX_HEADER_SIZE,
    MATRIX_MAGIC,
    PARAM_GROUPS,
    VOCAB_FILE,
)
from connecte.data import Vocab, Vocabularies
from connecte.exceptions import (
    CheckpointDimensionError,
    CheckpointFormatError,
    ConfigurationError,
    DataError,
)
from connecte.model.config import TrainConfig
from connecte.model.params import ModelParams
from connecte.utils import dump_json, load_json

logger = logging.getLogger(__name__)

Checkpoint = namedtuple("Checkpoint", ["params", "config", "vocabs"])

_HEADER = struct.Struct("<8sQQ")
_VOCAB_KINDS = ("entity", "relation", "type")


def write_matrix(path, matrix):
    matrix = np.asarray(matrix)
    rows, cols = matrix.shape
    with open(path, "wb") as handle:
        handle.write(_HEADER.pack(MATRIX_MAGIC, rows, cols))
        handle.write(np.ascontiguousarray(matrix, dtype="<f4").tobytes())


def read_matrix(path):
    """
    Read a matrix file

    Raises:
        CheckpointFormatError for a missing file, wrong magic or a payload whose length
        disagrees with the header
    """
    try:
        with open(path, "rb") as handle:
            payload = handle.read()
    except OSError as err:
        raise CheckpointFormatError(path, f"cannot read ({err.strerror})")
    if len(payload) < MATRIX_HEADER_SIZE:
        raise CheckpointFormatError(path, "truncated header")
    magic, rows, cols = _HEADER.unpack_from(payload)
    if magic != MATRIX_MAGIC:
        raise CheckpointFormatError(path, f"bad magic {magic!r}")
    expected = MATRIX_HEADER_SIZE + rows * cols * 4
    if len(payload) != expected:
        raise CheckpointFormatError(
            path, f"payload is {len(payload)} bytes, header implies {expected}"
        )
    values = np.frombuffer(payload, dtype="<f4", offset=MATRIX_HEADER_SIZE)
    return values.reshape(rows, cols).astype(np.float64)


def _manifest(params, config, vocabs):
    return {
        "format_version": CHECKPOINT_FORMAT_VERSION,
        "dims": {"kappa": params.kappa, "ell": params.ell},
        "sizes": {kind: len(vocab) for kind, vocab in zip(_VOCAB_KINDS, vocabs)},
        "config": config._asdict(),
        "init_rule": params.init_rule,
    }


def save_checkpoint(params, config, vocabs, directory):
    """
    Write ``params``, ``config`` and ``vocabs`` (a Vocabularies tuple) to ``directory``

    Raises:
        ConfigurationError if vocabulary sizes disagree with the parameter shapes
    """
    sizes = (len(vocabs.entity), len(vocabs.relation), len(vocabs.type))
    if sizes != (params.n_entities, params.n_relations, params.n_types):
        raise ConfigurationError(
            f"vocabulary sizes {sizes} do not match parameters {params!r}"
        )
    os.makedirs(directory, exist_ok=True)
    for group, matrix in params.groups().items():
        write_matrix(os.path.join(directory, MATRIX_FILE.format(group=group)), matrix)
    for kind, vocab in zip(_VOCAB_KINDS, vocabs):
        vocab.dump(os.path.join(directory, VOCAB_FILE.format(kind=kind)))
    dump_json(_manifest(params, config, vocabs), os.path.join(directory, MANIFEST_FILE))
    logger.info("Saved checkpoint %r to %s", params, directory)


def _read_manifest(directory):
    path = os.path.join(directory, MANIFEST_FILE)
    try:
        manifest = load_json(path)
    except OSError as err:
        raise CheckpointFormatError(path, f"cannot read ({err.strerror})")
    except ValueError as err:
        raise CheckpointFormatError(path, f"invalid JSON ({err})")
    try:
        version = Version(str(manifest["format_version"]))
        kappa, ell = manifest["dims"]["kappa"], manifest["dims"]["ell"]
        sizes = manifest["sizes"]
        config = TrainConfig.from_dict(manifest["config"])
    except (KeyError, TypeError, InvalidVersion, ConfigurationError) as err:
        raise CheckpointFormatError(path, f"malformed manifest ({err})")
    if version.major != Version(CHECKPOINT_FORMAT_VERSION).major:
        raise CheckpointFormatError(
            path, f"format version {version} is not compatible with {CHECKPOINT_FORMAT_VERSION}"
        )
    return manifest, kappa, ell, sizes, config


def load_checkpoint(directory):
    """
    Load a checkpoint written by save_checkpoint

    Every file is validated before anything is returned.

    Returns:
        Checkpoint(params, config, vocabs)
    Raises:
        CheckpointFormatError, CheckpointDimensionError
    """
    manifest, kappa, ell, sizes, config = _read_manifest(directory)
    expected = ModelParams.expected_shapes(
        kappa, ell, sizes["entity"], sizes["type"], sizes["relation"]
    )
    matrices = {}
    for group in PARAM_GROUPS:
        matrix = read_matrix(os.path.join(directory, MATRIX_FILE.format(group=group)))
        if matrix.shape != expected[group]:
            raise CheckpointDimensionError(group, expected[group], matrix.shape)
        matrices[group] = matrix

    vocabs = []
    for kind in _VOCAB_KINDS:
        path = os.path.join(directory, VOCAB_FILE.format(kind=kind))
        try:
            vocab = Vocab.load(path, kind)
        except OSError as err:
            raise CheckpointFormatError(path, f"cannot read ({err.strerror})")
        except DataError as err:
            raise CheckpointFormatError(path, str(err))
        if len(vocab) != sizes[kind]:
            raise CheckpointDimensionError(f"vocab_{kind}", (sizes[kind],), (len(vocab),))
        vocabs.append(vocab)

    params = ModelParams(**matrices, init_rule=manifest.get("init_rule", config.init_rule))
    logger.info("Loaded checkpoint %r from %s", params, directory)
    return Checkpoint(params, config, Vocabularies(*vocabs))


def checkpoint_digest(directory):
    """SHA-256 over the files that make up a checkpoint's identity, in a fixed order"""
    names = [MANIFEST_FILE]
    names += [VOCAB_FILE.format(kind=kind) for kind in _VOCAB_KINDS]
    names += [MATRIX_FILE.format(group=group) for group in PARAM_GROUPS]
    sha = hashlib.sha256()
    for name in names:
        with open(os.path.join(directory, name), "rb") as handle:
            sha.update(name.encode("utf-8"))
            sha.update(handle.read())
    return sha.hexdigest()
