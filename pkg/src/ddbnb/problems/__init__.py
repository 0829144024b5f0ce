"""Built-in problem models: misp, mcp, max2sat, tsptw."""

from . import max2sat, mcp, misp, tsptw

__all__ = ["max2sat", "mcp", "misp", "tsptw"]
