"""Utility modules: file handling and instance generation."""

from .file_utils import FileUtils
from .generator import InstanceGenerator, generate

__all__ = ["FileUtils", "InstanceGenerator", "generate"]
