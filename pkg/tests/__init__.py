"""Test suite for MCP Firmware Log Analysis Server.""" 