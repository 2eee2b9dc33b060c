"""
connecte.data.records

Id-resolved record types shared by the loaders, the knowledge base and the trainer
"""

from collections import namedtuple

Triple = namedtuple("Triple", ["head", "rel", "tail"])
TypeAssertion = namedtuple("TypeAssertion", ["entity", "type"])
TypeTriple = namedtuple("TypeTriple", ["head_type", "rel", "tail_type"])

# The three vocabularies every dataset, knowledge base and checkpoint is resolved against
Vocabularies = namedtuple("Vocabularies", ["entity", "relation", "type"])
