"""
Командный слой: конфигурация запуска, схемы отчетов, команды CLI.
"""
